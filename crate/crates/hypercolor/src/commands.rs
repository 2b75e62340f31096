//! One function per subcommand. Each builds a [`Report`]; the caller decides
//! where it goes and turns failed checks into the exit status.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use hypercolor_core::bounds::{
    check_beta_lemma, check_family_bounds, difference_bound, difference_via_fi, fi_terms, threshold,
    weierstrass_product_bound, DEFAULT_BETA_EDGE_CAP,
};
use hypercolor_core::chromatic::{
    chromatic_count_brute, chromatic_poly_broken_with, chromatic_poly_stratified, chromatic_poly_whitney,
};
use hypercolor_core::cycles::{broken_cycles, delta_cycles, stratify_with, Stratification};
use hypercolor_core::improper::{
    build_star, improper_count_brute, improper_list_count_brute, improper_list_count_via_star, Graph,
};
use hypercolor_core::listcount::{alpha, expand, list_count_brute, list_count_ie};
use hypercolor_core::verify::{MinimizerReport, Mode, SearchPlan, SearchSpec, Strategy};
use hypercolor_core::{EdgeSubset, Error as CoreError, Hypergraph, ListAssignment, Polynomial};
use serde_json::{json, Value};

use crate::formats::{polynomial_to_json, read_hypergraph, read_lists};
use crate::parallel::{run_plan, with_threads};
use crate::report::{describe, num, nums, threshold_json, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    Input,
    Lex,
}

/// Everything a subcommand may need; which fields are required depends on
/// the command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub lists: Option<PathBuf>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub m: Option<usize>,
    pub universe: Option<usize>,
    pub strategy: Option<Strategy>,
    pub samples: usize,
    pub seed: u64,
    pub max_edges: usize,
    pub edge_order: EdgeOrder,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            lists: None,
            k: None,
            d: None,
            m: None,
            universe: None,
            strategy: None,
            samples: 1000,
            seed: 0,
            max_edges: 20,
            edge_order: EdgeOrder::Input,
            threads: None,
        }
    }
}

/// Assignments from a search that also go through the β and product checks.
const LEMMA_SAMPLE: usize = 50;

fn order_label(order: EdgeOrder) -> &'static str {
    match order {
        EdgeOrder::Input => "input",
        EdgeOrder::Lex => "lex",
    }
}

fn load(cfg: &RunConfig) -> Result<Hypergraph> {
    let path = cfg.input.as_ref().context("--input is required")?;
    let h = read_hypergraph(path)?;
    let h = match cfg.edge_order {
        EdgeOrder::Input => h,
        EdgeOrder::Lex => h.sorted_lex(),
    };
    check_cap(h.m(), cfg.max_edges, "input")?;
    Ok(h)
}

fn check_cap(m: usize, cap: usize, what: &str) -> Result<()> {
    if m > cap {
        bail!("{what} has {m} edges, above --max-edges {cap}");
    }
    Ok(())
}

fn load_lists(cfg: &RunConfig, h: &Hypergraph) -> Result<ListAssignment> {
    let path = cfg.lists.as_ref().context("--lists is required")?;
    let l = read_lists(path)?;
    l.check_for(h)?;
    Ok(l)
}

/// Brute-force counts are optional extras: too large an instance is
/// reported as skipped instead of failing the command.
fn feasible<T>(result: hypercolor_core::Result<T>) -> Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(CoreError::TooManyColorings { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn finish(mut report: Report, start: Instant) -> Report {
    report.set_elapsed(start.elapsed());
    report
}

fn edges_json(s: EdgeSubset) -> Value {
    nums(s.iter())
}

fn strata_json(strata: &Stratification) -> Value {
    Value::Array(
        strata
            .strata()
            .map(|((i, j), count)| json!({ "i": num(i), "j": num(j), "count": num(count) }))
            .collect(),
    )
}

fn lists_json(l: &ListAssignment) -> Value {
    Value::Array((0..l.n()).map(|v| nums(l.colors(v))).collect())
}

pub fn cmd_poly(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let h = load(cfg)?;
    let mut report = Report::new("poly", describe(&h, order_label(cfg.edge_order)));
    let family = broken_cycles(&h)?;
    let broken = chromatic_poly_broken_with(&h, &family)?;
    let whitney = chromatic_poly_whitney(&h)?;
    let strata = stratify_with(&h, &family, false)?;
    let stratified = chromatic_poly_stratified(&strata);
    report.result("polynomial", polynomial_to_json(&broken));
    report.result("polynomial_text", Value::String(broken.to_string()));
    report.result("whitney", polynomial_to_json(&whitney));
    report.result("stratified", polynomial_to_json(&stratified));
    report.result("strata", strata_json(&strata));
    report.check(
        "whitney_equals_broken",
        whitney == broken,
        Some(polynomial_to_json(&whitney)),
    );
    report.check(
        "stratified_equals_broken",
        stratified == broken,
        Some(polynomial_to_json(&stratified)),
    );
    if let Some(k) = cfg.k {
        let value = broken.eval(k as u64);
        report.result("k", num(k));
        report.result("value", num(&value));
        match feasible(chromatic_count_brute(&h, k as u64))? {
            Some(brute) => {
                report.result("brute", num(&brute));
                report.check("brute_matches_polynomial", brute == value, Some(num(&brute)));
            }
            None => report.result("brute", Value::Null),
        }
    }
    Ok(finish(report, start))
}

pub fn cmd_cycles(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let h = load(cfg)?;
    let mut report = Report::new("cycles", describe(&h, order_label(cfg.edge_order)));
    let cycles = delta_cycles(&h)?;
    let family = broken_cycles(&h)?;
    let strata = stratify_with(&h, &family, false)?;
    report.result(
        "delta_cycles",
        Value::Array(cycles.members().iter().map(|&c| edges_json(c)).collect()),
    );
    report.result(
        "broken_cycles",
        Value::Array(
            family
                .members()
                .iter()
                .map(|b| json!({ "edges": edges_json(b.edges), "removed": num(b.removed) }))
                .collect(),
        ),
    );
    report.result("strata", strata_json(&strata));
    report.result("broken_cycle_free_sets", num(strata.total()));
    let short = cycles.members().iter().find(|c| c.len() < 3);
    report.check(
        "delta_cycles_have_at_least_three_edges",
        short.is_none(),
        short.map(|&c| edges_json(c)),
    );
    if h.m() > 0 && h.uniformity().is_some() {
        let bounds = check_family_bounds(&h, &family)?;
        report.result("bound_checks", num(bounds.checked));
        report.check(
            "edge_and_component_bounds",
            bounds.holds(),
            bounds.violations.first().map(|(s, _)| edges_json(*s)),
        );
    }
    Ok(finish(report, start))
}

pub fn cmd_listcount(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let h = load(cfg)?;
    let l = load_lists(cfg, &h)?;
    let mut instance = describe(&h, order_label(cfg.edge_order));
    instance["k"] = num(l.k());
    instance["universe"] = num(l.universe());
    let mut report = Report::new("listcount", instance);

    let family = broken_cycles(&h)?;
    let expansion = expand(&h, &family, &l)?;
    let broken = expansion.list_count();
    let ie = list_count_ie(&h, &l)?;
    let brute = feasible(list_count_brute(&h, &l))?;
    report.result(
        "counts",
        json!({
            "brute": brute.as_ref().map(num),
            "inclusion_exclusion": num(&ie),
            "broken": num(&broken),
        }),
    );
    let agree = ie == broken && brute.as_ref().is_none_or(|b| *b == broken);
    report.check("counts_agree", agree, None);

    let alphas: Vec<usize> = (0..h.m()).map(|e| alpha(&h, &l, e)).collect();
    let alpha_total: usize = alphas.iter().sum();
    report.result("alpha", nums(&alphas));
    report.result("alpha_total", num(alpha_total));
    let constant = expansion.constant_count();
    report.result("constant_count", num(&constant));
    let difference = &broken - &constant;
    report.result("difference", num(&difference));

    let beta = check_beta_lemma(&h, &l, DEFAULT_BETA_EDGE_CAP)?;
    report.result("beta_checks", num(beta.checked));
    report.check(
        "beta_lemma",
        beta.holds(),
        beta.violations
            .first()
            .map(|v| json!({ "edges": edges_json(v.edges), "vertices": nums(&v.vertices) })),
    );

    if let (Some(r), true) = (h.uniformity(), h.m() > 0) {
        let terms = fi_terms(&h, &l, &expansion)?;
        report.result(
            "f",
            Value::Array(
                terms
                    .iter()
                    .map(|t| json!({ "i": num(t.i), "value": num(&t.value), "upper": num(&t.upper) }))
                    .collect(),
            ),
        );
        let bad = terms.iter().find(|t| !(t.within_sandwich() && t.first_is_exact()));
        report.check("fi_sandwich", bad.is_none(), bad.map(|t| num(t.i)));
        report.check("fi_identity", difference_via_fi(&terms) == difference, None);
        if h.is_connected() {
            let bound = difference_bound(h.n(), r, h.m(), l.k(), alpha_total);
            report.result("difference_bound", num(format!("{bound:.12}")));
            let holds = hypercolor_core::bounds::bound_holds(&difference, bound);
            report.check("difference_bound", holds, Some(num(&difference)));
        }
    }
    Ok(finish(report, start))
}

fn spec_from(cfg: &RunConfig, k: usize, default_strategy: Strategy) -> SearchSpec {
    let strategy = cfg.strategy.unwrap_or(default_strategy);
    let spec = match strategy {
        Strategy::ExhaustiveCanonical => SearchSpec::exhaustive(k),
        Strategy::Random => SearchSpec::random(k, cfg.samples, cfg.seed),
    };
    let spec = SearchSpec { seed: cfg.seed, ..spec };
    match cfg.universe {
        Some(u) => spec.with_universe(u),
        None => spec,
    }
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::ExhaustiveCanonical => "exhaustive",
        Strategy::Random => "random",
    }
}

fn minimizer_json(m: &MinimizerReport) -> Value {
    json!({
        "mode": match m.mode { Mode::Assertion => "assertion", Mode::Exploration => "exploration" },
        "k": num(m.spec.k),
        "strategy": strategy_name(m.spec.strategy),
        "universe": num(m.spec.universe),
        "samples": num(m.spec.samples),
        "seed": num(m.spec.seed),
        "universe_note": "the universe size is a coverage choice, not a proof of sufficiency",
        "searched": num(m.searched),
        "exact_orbits": m.exact_orbits,
        "constant_count": num(&m.constant_count),
        "min_count": m.min_count.as_ref().map(num),
        "argmin": m.argmin.as_ref().map(lists_json),
        "argmin_is_constant": m.argmin_is_constant,
        "strict": m.strict,
        "witness_count": num(m.witness_count),
        "witnesses": m.witnesses.iter().map(|(l, c)| json!({ "lists": lists_json(l), "count": num(c) })).collect::<Vec<_>>(),
        "cross_checked": num(m.cross_checked),
    })
}

fn record_minimizer(report: &mut Report, m: &MinimizerReport, prefix: &str) {
    let name = |s: &str| format!("{prefix}{s}");
    report.check(&name("constant_count_matches"), m.constant_matches, None);
    report.check(
        &name("brute_cross_check"),
        m.cross_check_mismatches.is_empty(),
        m.cross_check_mismatches
            .first()
            .map(|(l, a, b)| json!({ "lists": lists_json(l), "expansion": num(a), "brute": num(b) })),
    );
    report.check(&name("fi_sandwich"), m.fi_violations == 0, Some(num(m.fi_violations)));
    report.check(
        &name("fi_identity"),
        m.identity_violations == 0,
        Some(num(m.identity_violations)),
    );
    report.check(
        &name("difference_bound"),
        m.bound_violations == 0,
        Some(num(m.bound_violations)),
    );
    if m.mode == Mode::Assertion {
        report.check(
            &name("strict_minimizer"),
            m.strict,
            m.witnesses
                .first()
                .map(|(l, c)| json!({ "lists": lists_json(l), "count": num(c) })),
        );
    }
}

fn search(h: &Hypergraph, spec: SearchSpec, threads: Option<usize>) -> Result<(MinimizerReport, Vec<ListAssignment>)> {
    let mode = if spec.k as u64 >= threshold(h.m()).k_min {
        Mode::Assertion
    } else {
        Mode::Exploration
    };
    with_threads(threads, || {
        let plan = SearchPlan::new(h, spec, mode)?;
        let sample: Vec<ListAssignment> = plan.assignments().iter().take(LEMMA_SAMPLE).cloned().collect();
        Ok((run_plan(plan)?, sample))
    })?
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let h = load(cfg)?;
    h.require_uniform()?;
    if !h.is_connected() {
        bail!("verify needs a connected hypergraph");
    }
    let t = threshold(h.m());
    let k = cfg.k.unwrap_or(t.k_min as usize);
    let spec = spec_from(cfg, k, Strategy::ExhaustiveCanonical);
    let mut report = Report::new("verify", describe(&h, order_label(cfg.edge_order)));
    report.result("threshold", threshold_json(&t));

    let (minimizer, sample) = search(&h, spec, cfg.threads)?;
    report.result("minimizer", minimizer_json(&minimizer));
    record_minimizer(&mut report, &minimizer, "");

    if h.m() > 0 {
        let bounds = check_family_bounds(&h, &broken_cycles(&h)?)?;
        report.check(
            "edge_and_component_bounds",
            bounds.holds(),
            bounds.violations.first().map(|(s, _)| edges_json(*s)),
        );
    }
    let mut beta_checks = 0;
    let mut beta_failure = None;
    let mut product_failure = None;
    let lemma_lists = sample.iter().chain(minimizer.argmin.as_ref());
    for l in lemma_lists {
        let beta = check_beta_lemma(&h, l, DEFAULT_BETA_EDGE_CAP)?;
        beta_checks += beta.checked;
        if !beta.holds() && beta_failure.is_none() {
            beta_failure = Some(lists_json(l));
        }
        let a: Vec<f64> = (0..h.m()).map(|e| alpha(&h, l, e) as f64).collect();
        let product = weierstrass_product_bound(k as u64, &a)?;
        let ok = product.holds && (!product.equality_expected || product.equality_holds);
        if !ok && product_failure.is_none() {
            product_failure = Some(lists_json(l));
        }
    }
    report.result("beta_checks", num(beta_checks));
    report.check("beta_lemma", beta_failure.is_none(), beta_failure);
    report.check("product_bound", product_failure.is_none(), product_failure);
    Ok(finish(report, start))
}

/// The sub-hypergraph on one component, vertices renumbered in order.
fn component(h: &Hypergraph, vertices: &[usize]) -> Result<Hypergraph> {
    let index = |v: usize| vertices.binary_search(&v).ok();
    let edges = h
        .edges()
        .iter()
        .filter(|e| index(e[0]).is_some())
        .map(|e| {
            e.iter()
                .map(|&v| index(v).expect("edge inside its component"))
                .collect()
        })
        .collect();
    Ok(Hypergraph::new(vertices.len(), edges)?)
}

pub fn cmd_improper(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let path = cfg.input.as_ref().context("--input is required")?;
    let g = Graph::from_hypergraph(&read_hypergraph(path)?).context("improper needs a graph (all edges of size 2)")?;
    let d = cfg.d.context("-d is required")?;
    let star = build_star(&g, d)?;
    let s = &star.hypergraph;
    check_cap(s.m(), cfg.max_edges, "the star hypergraph")?;

    let mut instance = describe(&g.to_hypergraph(), "input");
    instance["d"] = num(d);
    let mut report = Report::new("improper", instance);
    let star_connected = s.is_connected();
    let labeling = s.component_count(s.all_edges());
    report.result("p", num(star.p()));
    report.result("star_edges", Value::Array(star.provenance().iter().map(nums).collect()));
    report.result("star_connected", Value::Bool(star_connected));
    report.result("star_components", num(labeling.count()));
    let t = threshold(star.p());
    let mut threshold_value = threshold_json(&t);
    threshold_value["applies"] = Value::Bool(star_connected);
    report.result("threshold", threshold_value);

    let family = broken_cycles(s)?;
    let p = chromatic_poly_broken_with(s, &family)?;
    report.result("polynomial", polynomial_to_json(&p));
    if d == 0 {
        let mut own: Vec<Vec<usize>> = g.edges().iter().map(|&(a, b)| vec![a, b]).collect();
        own.sort();
        report.check("d0_star_equals_graph", s.edges() == own.as_slice(), None);
    }
    if let Some(k) = cfg.k {
        record_counts(&mut report, &g, d, k, &p)?;
    }
    if cfg.lists.is_some() {
        let l = load_lists(cfg, s)?;
        let via_star = improper_list_count_via_star(&g, d, &l)?;
        let brute = feasible(improper_list_count_brute(&g, d, &l))?;
        report.result(
            "list_counts",
            json!({ "brute": brute.as_ref().map(num), "via_star": num(&via_star) }),
        );
        report.check("list_reduction_agrees", brute.is_none_or(|b| b == via_star), None);
    }
    if let (Some(k), Some(_)) = (cfg.k, cfg.strategy) {
        let spec = spec_from(cfg, k, Strategy::ExhaustiveCanonical);
        if star_connected {
            let (m, _) = search(s, spec, cfg.threads)?;
            report.result("minimizer", minimizer_json(&m));
            record_minimizer(&mut report, &m, "star_");
        } else {
            // no connectivity, no claim: explore each component and only record
            let mut parts = Vec::new();
            for vertices in labeling.components().iter().filter(|c| c.len() > 1) {
                let part = component(s, vertices)?;
                let plan_k = spec.k;
                let m = with_threads(cfg.threads, || -> Result<MinimizerReport> {
                    let plan = SearchPlan::new(&part, spec, Mode::Exploration)?;
                    run_plan(plan)
                })??;
                parts.push(json!({
                    "vertices": nums(vertices),
                    "m": num(part.m()),
                    "k": num(plan_k),
                    "minimizer": minimizer_json(&m),
                }));
            }
            report.result("component_minimizers", Value::Array(parts));
        }
    }
    Ok(finish(report, start))
}

fn record_counts(report: &mut Report, g: &Graph, d: usize, k: usize, p: &Polynomial) -> Result<()> {
    let via_star = p.eval(k as u64);
    let brute = feasible(improper_count_brute(g, d, k as u64))?;
    report.result(
        "counts",
        json!({ "k": num(k), "brute": brute.as_ref().map(num), "via_star": num(&via_star) }),
    );
    report.check("reduction_agrees", brute.is_none_or(|b| b == via_star), None);
    Ok(())
}

pub fn cmd_threshold(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let (m, instance) = match (cfg.m, &cfg.input) {
        (Some(m), None) => (m, json!({ "m": num(m) })),
        (None, Some(_)) => {
            let h = load(cfg)?;
            (h.m(), describe(&h, order_label(cfg.edge_order)))
        }
        _ => bail!("threshold needs exactly one of -m or --input"),
    };
    if m == 0 {
        bail!("threshold needs m >= 1");
    }
    let mut report = Report::new("threshold", instance);
    report.result("threshold", threshold_json(&threshold(m)));
    Ok(finish(report, start))
}
