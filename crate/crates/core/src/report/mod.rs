//! Command dispatch and report envelopes for the `sumfree` binary.
//!
//! Everything that depends on wall-clock time or the worker count lives in
//! the envelope's `timing` object, so two runs that differ only in
//! `--workers` produce identical JSON once `timing` is removed.

pub mod descriptor;
mod emit;
pub mod literal;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{abelian_groups_of_order, GroupSpec, GroupTable};
use crate::search::{
    enumerate_locally_maximal, enumerate_maximum_sum_free, max_sum_free_size_budgeted, Budget,
    EnumerationReport,
};
use crate::set::{
    inverse_set, is_locally_maximal, is_locally_maximal_naive, is_sum_free, product_set, sqrt_set,
    LabeledSet,
};
use crate::subgroup::{all_subgroups, frattini, maximal_subgroups, SubgroupView};
use crate::verify::{
    check_corollary_counts_with, check_identities_over_maximum_sets, check_p2_with, check_p3_with,
    check_product_set_identities_with, check_translate_lemma_with, counterexample_c2_4,
    counterexample_c4, p_greater_3_witness, GroupFacts, TheoremVerdict, VerifyError,
};

pub use descriptor::{parse_group_descriptor, DescriptorError};
pub use emit::emit;
pub use literal::{parse_set_literal, LiteralError};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable holding the default `--max-nodes` budget.
pub const MAX_NODES_ENV: &str = "SUMFREE_MAX_NODES";

/// Subgroup counts are only listed up to this order; the full lattice of
/// larger elementary abelian groups is too big to be useful.
const SUBGROUP_COUNT_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Analyze,
    Enumerate,
    Verify,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TheoremSelector {
    P2,
    P3,
    C4,
    #[value(name = "c2_4")]
    #[serde(rename = "c2_4")]
    C2_4,
    N1,
    N2,
    Pgt3,
    Counts,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub groups: Vec<String>,
    pub theorem: TheoremSelector,
    pub locally_maximal: bool,
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
    pub workers: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Upper order bound for `sweep`.
    pub max_order: usize,
    pub set: Option<String>,
    pub element: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            groups: Vec::new(),
            theorem: TheoremSelector::All,
            locally_maximal: false,
            max_nodes: None,
            timeout: None,
            workers: 1,
            format: Format::Json,
            out: None,
            max_order: 16,
            set: None,
            element: None,
        }
    }

    pub fn group(mut self, descriptor: &str) -> Self {
        self.groups.push(descriptor.to_string());
        self
    }

    pub fn theorem(mut self, theorem: TheoremSelector) -> Self {
        self.theorem = theorem;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            timeout: self.timeout,
            workers: self.workers,
            ..Budget::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid group descriptor '{text}': {source}")]
    Descriptor {
        text: String,
        source: DescriptorError,
    },
    #[error("could not serialise report: {0}")]
    Serialise(String),
}

/// The run's configuration as echoed in reports; excludes worker count and
/// output path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: Command,
    pub groups: Vec<String>,
    pub theorem: TheoremSelector,
    pub locally_maximal: bool,
    pub max_nodes: Option<u64>,
    pub timeout_ms: Option<u64>,
    pub max_order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryType {
    pub p: usize,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetAnalysis {
    pub set: LabeledSet,
    pub sum_free: bool,
    pub maximum: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locally_maximal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locally_maximal_naive: Option<bool>,
    pub product_set: LabeledSet,
    pub inverse_set: LabeledSet,
    pub quotient_set: LabeledSet,
    pub sqrt_set: LabeledSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub abelian: bool,
    pub exponent: usize,
    pub elementary_abelian: Option<ElementaryType>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgroup_count: Option<usize>,
    pub maximal_subgroup_count: usize,
    pub maximal_subgroups: Vec<SubgroupView>,
    pub frattini: LabeledSet,
    pub max_sum_free_size: usize,
    pub max_size_truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set: Option<SetAnalysis>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationView {
    pub max_size: usize,
    pub maximum_count: usize,
    pub maximum_sets: Vec<LabeledSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locally_maximal_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locally_maximal_sets: Option<Vec<LabeledSet>>,
    pub truncated: bool,
    pub nodes_explored: u64,
}

impl EnumerationView {
    fn new(g: &GroupTable, r: &EnumerationReport) -> Self {
        Self {
            max_size: r.max_size,
            maximum_count: r.maximum_count,
            maximum_sets: r.maximum_sets.iter().map(|s| s.labeled(g)).collect(),
            locally_maximal_count: r.locally_maximal_sets.as_ref().map(Vec::len),
            locally_maximal_sets: r
                .locally_maximal_sets
                .as_ref()
                .map(|v| v.iter().map(|s| s.labeled(g)).collect()),
            truncated: r.truncated,
            nodes_explored: r.nodes_explored,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupResult {
    pub group: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub analysis: Option<Analysis>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enumeration: Option<EnumerationView>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub verdicts: Vec<TheoremVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub errors: Vec<String>,
}

impl GroupResult {
    fn new(group: &str, order: usize) -> Self {
        Self {
            group: group.to_string(),
            order,
            analysis: None,
            enumeration: None,
            verdicts: Vec::new(),
            errors: Vec::new(),
        }
    }

    fn truncated(&self) -> bool {
        self.enumeration.as_ref().is_some_and(|e| e.truncated)
            || self.analysis.as_ref().is_some_and(|a| a.max_size_truncated)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTiming {
    pub group: String,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub workers: usize,
    pub total_micros: u64,
    pub groups: Vec<GroupTiming>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub results: Vec<GroupResult>,
    pub truncated: bool,
    /// No truncation, no errors, and every verdict true.
    pub verified: bool,
    pub exit_code: i32,
    pub timing: Timing,
}

impl ReportEnvelope {
    pub fn verdicts(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.results.iter().flat_map(|r| r.verdicts.iter())
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exit code for a set of results: 2 on errors or truncation, 1 if any
/// verdict is false, 0 otherwise.
fn exit_code_for(results: &[GroupResult]) -> i32 {
    if results
        .iter()
        .any(|r| !r.errors.is_empty() || r.truncated())
    {
        EXIT_USAGE
    } else if results.iter().flat_map(|r| &r.verdicts).any(|v| !v.overall) {
        EXIT_VERDICT_FALSE
    } else {
        EXIT_OK
    }
}

fn micros(d: Duration) -> u64 {
    d.as_micros().min(u64::MAX as u128) as u64
}

pub fn run(config: &RunConfig) -> Result<ReportEnvelope, RunError> {
    validate(config)?;
    let started = Instant::now();
    let budget = config.budget();

    let groups: Vec<GroupSpec> = match config.command {
        Command::Sweep => (2..=config.max_order)
            .flat_map(abelian_groups_of_order)
            .collect(),
        _ => config
            .groups
            .iter()
            .map(|text| {
                parse_group_descriptor(text).map_err(|source| RunError::Descriptor {
                    text: text.clone(),
                    source,
                })
            })
            .collect::<Result<_, _>>()?,
    };

    let mut results = Vec::new();
    let mut timings = Vec::new();
    if config.command == Command::Verify {
        for verdict in standalone_verdicts(config.theorem) {
            let t = Instant::now();
            let (name, result) = match verdict {
                Standalone::C4 => ("C:4", counterexample_c4()),
                Standalone::C2_4 => ("Z:2^4", counterexample_c2_4()),
            };
            let order = if name == "C:4" { 4 } else { 16 };
            let mut r = GroupResult::new(name, order);
            match result {
                Ok(v) => r.verdicts.push(v),
                Err(e) => r.errors.push(e.to_string()),
            }
            results.push(r);
            timings.push(GroupTiming {
                group: name.to_string(),
                micros: micros(t.elapsed()),
            });
        }
    }

    for spec in &groups {
        let t = Instant::now();
        let name = spec.to_string();
        let result = match spec.build() {
            Ok(g) => match config.command {
                Command::Analyze => analyze(&g, config, &budget),
                Command::Enumerate => enumerate(&g, config, &budget),
                Command::Verify => verify(&g, config, &budget),
                Command::Sweep => sweep(&g, config, &budget),
            },
            Err(e) => {
                let mut r = GroupResult::new(&name, 0);
                r.errors.push(e.to_string());
                r
            }
        };
        results.push(result);
        timings.push(GroupTiming {
            group: name,
            micros: micros(t.elapsed()),
        });
    }

    let exit_code = exit_code_for(&results);
    Ok(ReportEnvelope {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        config: ConfigEcho {
            command: config.command,
            groups: config.groups.clone(),
            theorem: config.theorem,
            locally_maximal: config.locally_maximal,
            max_nodes: config.max_nodes,
            timeout_ms: config.timeout.map(|t| t.as_millis() as u64),
            max_order: config.max_order,
            set: config.set.clone(),
            element: config.element.clone(),
        },
        truncated: results.iter().any(GroupResult::truncated),
        verified: exit_code == EXIT_OK,
        exit_code,
        results,
        timing: Timing {
            workers: config.workers,
            total_micros: micros(started.elapsed()),
            groups: timings,
        },
    })
}

fn validate(config: &RunConfig) -> Result<(), RunError> {
    let usage = |msg: &str| Err(RunError::Usage(msg.to_string()));
    if config.workers == 0 {
        return usage("--workers must be at least 1");
    }
    if config.max_nodes == Some(0) {
        return usage("--max-nodes must be positive");
    }
    if config.timeout == Some(Duration::ZERO) {
        return usage("--timeout must be positive");
    }
    if config.format == Format::Csv
        && !matches!(config.command, Command::Enumerate | Command::Sweep)
    {
        return usage("csv output is only available for enumerate and sweep");
    }
    let needs_group = match config.command {
        Command::Sweep => false,
        Command::Verify => !matches!(config.theorem, TheoremSelector::C4 | TheoremSelector::C2_4),
        _ => true,
    };
    if needs_group && config.groups.is_empty() {
        return usage("--group is required for this command");
    }
    if config.command == Command::Sweep && config.max_order < 2 {
        return usage("--max-order must be at least 2");
    }
    if config.element.is_some() && config.set.is_none() {
        return usage("--element needs --set");
    }
    Ok(())
}

enum Standalone {
    C4,
    C2_4,
}

fn standalone_verdicts(selector: TheoremSelector) -> Vec<Standalone> {
    match selector {
        TheoremSelector::C4 => vec![Standalone::C4],
        TheoremSelector::C2_4 => vec![Standalone::C2_4],
        TheoremSelector::All => vec![Standalone::C4, Standalone::C2_4],
        _ => Vec::new(),
    }
}

fn analyze(g: &GroupTable, config: &RunConfig, budget: &Budget) -> GroupResult {
    let mut r = GroupResult::new(g.descriptor(), g.order());
    let maximal = maximal_subgroups(g).unwrap_or_default();
    let (max_size, truncated) = match max_sum_free_size_budgeted(g, None, budget) {
        Ok(v) => v,
        Err(e) => {
            r.errors.push(e.to_string());
            (0, true)
        }
    };
    let set = match &config.set {
        Some(text) => match analyze_set(g, text, max_size) {
            Ok(s) => Some(s),
            Err(e) => {
                r.errors.push(e);
                None
            }
        },
        None => None,
    };
    r.analysis = Some(Analysis {
        abelian: g.is_abelian(),
        exponent: g.exponent(),
        elementary_abelian: g
            .elementary_abelian_type()
            .map(|(p, n)| ElementaryType { p, n }),
        subgroup_count: (g.order() <= SUBGROUP_COUNT_LIMIT).then(|| all_subgroups(g).len()),
        maximal_subgroup_count: maximal.len(),
        maximal_subgroups: maximal.iter().map(|m| m.describe(g)).collect(),
        frattini: frattini(g).labeled(g),
        max_sum_free_size: max_size,
        max_size_truncated: truncated,
        set,
    });
    r
}

fn analyze_set(g: &GroupTable, text: &str, max_size: usize) -> Result<SetAnalysis, String> {
    let s = parse_set_literal(g, text).map_err(|e| e.to_string())?;
    let err = |e: crate::set::SetError| e.to_string();
    let sum_free = is_sum_free(g, &s).map_err(err)?;
    let inv = inverse_set(g, &s).map_err(err)?;
    Ok(SetAnalysis {
        set: s.labeled(g),
        sum_free,
        maximum: sum_free && s.len() == max_size,
        locally_maximal: sum_free
            .then(|| is_locally_maximal(g, &s))
            .transpose()
            .map_err(err)?,
        locally_maximal_naive: sum_free
            .then(|| is_locally_maximal_naive(g, &s))
            .transpose()
            .map_err(err)?,
        product_set: product_set(g, &s, &s).map_err(err)?.labeled(g),
        inverse_set: inv.labeled(g),
        quotient_set: product_set(g, &s, &inv).map_err(err)?.labeled(g),
        sqrt_set: sqrt_set(g, &s).map_err(err)?.labeled(g),
    })
}

fn enumeration_report(
    g: &GroupTable,
    config: &RunConfig,
    budget: &Budget,
) -> Result<EnumerationReport, String> {
    let report = if config.locally_maximal {
        enumerate_locally_maximal(g, budget)
    } else {
        enumerate_maximum_sum_free(g, budget)
    };
    report.map_err(|e| e.to_string())
}

fn enumerate(g: &GroupTable, config: &RunConfig, budget: &Budget) -> GroupResult {
    let mut r = GroupResult::new(g.descriptor(), g.order());
    match enumeration_report(g, config, budget) {
        Ok(report) => r.enumeration = Some(EnumerationView::new(g, &report)),
        Err(e) => r.errors.push(e),
    }
    r
}

fn facts_from(g: &GroupTable, report: EnumerationReport) -> Result<GroupFacts, VerifyError> {
    if report.truncated {
        return Err(VerifyError::Truncated(g.descriptor().to_string()));
    }
    Ok(GroupFacts {
        maximal: maximal_subgroups(g)?,
        frattini: frattini(g),
        enumeration: report,
    })
}

fn push_verdict(r: &mut GroupResult, result: Result<TheoremVerdict, VerifyError>) {
    match result {
        Ok(v) => r.verdicts.push(v),
        Err(e) => r.errors.push(e.to_string()),
    }
}

fn verify(g: &GroupTable, config: &RunConfig, budget: &Budget) -> GroupResult {
    use TheoremSelector as T;
    let mut r = GroupResult::new(g.descriptor(), g.order());
    let selector = config.theorem;
    if matches!(selector, T::C4 | T::C2_4) {
        return r;
    }
    let ea = g.elementary_abelian_type();

    if selector == T::Pgt3 || (selector == T::All && ea.is_some_and(|(p, _)| p > 3)) {
        match ea {
            Some((p, n)) if p > 3 => push_verdict(&mut r, p_greater_3_witness(p as u64, n)),
            _ => r.errors.push(format!(
                "{} is not elementary abelian with p > 3",
                g.descriptor()
            )),
        }
        if selector == T::Pgt3 {
            return r;
        }
    }

    let report = match enumerate_maximum_sum_free(g, budget) {
        Ok(report) => report,
        Err(e) => {
            r.errors.push(e.to_string());
            return r;
        }
    };
    r.enumeration = Some(EnumerationView::new(g, &report));
    let facts = match facts_from(g, report) {
        Ok(f) => f,
        Err(e) => {
            r.errors.push(e.to_string());
            return r;
        }
    };
    let is_ea3 = ea.is_some_and(|(p, _)| p == 3);
    let is_ea23 = ea.is_some_and(|(p, _)| p == 2 || p == 3);

    if matches!(selector, T::P2 | T::All) {
        push_verdict(&mut r, check_p2_with(g, &facts));
    }
    if matches!(selector, T::P3 | T::All) {
        push_verdict(&mut r, check_p3_with(g, &facts));
    }
    if selector == T::Counts || (selector == T::All && is_ea23) {
        push_verdict(&mut r, check_corollary_counts_with(g, &facts));
    }
    if matches!(selector, T::N1 | T::N2) || (selector == T::All && is_ea3) {
        match single_pair(g, config) {
            Ok(Some((s, x))) => {
                let max = facts.enumeration.max_size;
                if selector != T::N2 {
                    push_verdict(&mut r, check_translate_lemma_with(g, &s, x, max));
                }
                if selector != T::N1 {
                    push_verdict(&mut r, check_product_set_identities_with(g, &s, x, max));
                }
            }
            Ok(None) => match check_identities_over_maximum_sets(g, &facts) {
                Ok([translates, identities]) => {
                    if selector != T::N2 {
                        r.verdicts.push(translates);
                    }
                    if selector != T::N1 {
                        r.verdicts.push(identities);
                    }
                }
                Err(e) => r.errors.push(e.to_string()),
            },
            Err(e) => r.errors.push(e),
        }
    }
    r
}

/// `--set` / `--element`, when given. Without `--element` the smallest
/// member of the set is used.
fn single_pair(
    g: &GroupTable,
    config: &RunConfig,
) -> Result<Option<(crate::set::ElementSet, usize)>, String> {
    let Some(text) = &config.set else {
        return Ok(None);
    };
    let s = parse_set_literal(g, text).map_err(|e| e.to_string())?;
    let x = match &config.element {
        Some(e) => literal::parse_element(g, e).map_err(|e| e.to_string())?,
        None => s.first().ok_or("--set is empty")?,
    };
    Ok(Some((s, x)))
}

fn sweep(g: &GroupTable, config: &RunConfig, budget: &Budget) -> GroupResult {
    let mut r = GroupResult::new(g.descriptor(), g.order());
    let report = match enumeration_report(g, config, budget) {
        Ok(report) => report,
        Err(e) => {
            r.errors.push(e);
            return r;
        }
    };
    r.enumeration = Some(EnumerationView::new(g, &report));
    let facts = match facts_from(g, report) {
        Ok(f) => f,
        Err(e) => {
            r.errors.push(e.to_string());
            return r;
        }
    };
    push_verdict(&mut r, check_p2_with(g, &facts));
    push_verdict(&mut r, check_p3_with(g, &facts));
    match g.elementary_abelian_type() {
        Some((2, _)) => push_verdict(&mut r, check_corollary_counts_with(g, &facts)),
        Some((3, _)) => {
            push_verdict(&mut r, check_corollary_counts_with(g, &facts));
            match check_identities_over_maximum_sets(g, &facts) {
                Ok(vs) => r.verdicts.extend(vs),
                Err(e) => r.errors.push(e.to_string()),
            }
        }
        _ => {}
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_p3_on_z3_squared() {
        let env = run(&RunConfig::new(Command::Verify)
            .group("Z:3^2")
            .theorem(TheoremSelector::P3))
        .unwrap();
        assert_eq!(env.exit_code, EXIT_OK);
        let v = &env.results[0].verdicts[0];
        assert!(v.clauses.iter().all(|c| c.holds));
    }

    #[test]
    fn verify_p2_on_c4_has_witness() {
        let env = run(&RunConfig::new(Command::Verify)
            .group("C:4")
            .theorem(TheoremSelector::P2))
        .unwrap();
        let v = &env.results[0].verdicts[0];
        assert!(v.overall);
        let c = v.clause("elementary_abelian_2").unwrap();
        assert!(!c.holds);
        match &c.witness {
            Some(crate::verify::Witness::Set(s)) => assert_eq!(s.indices, vec![1, 3]),
            other => panic!("{other:?}"),
        }
        assert_eq!(env.exit_code, EXIT_OK);
    }

    #[test]
    fn enumerate_z3_cubed() {
        let env = run(&RunConfig::new(Command::Enumerate).group("Z:3^3")).unwrap();
        assert_eq!(
            env.results[0].enumeration.as_ref().unwrap().maximum_count,
            26
        );
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            run(&RunConfig::new(Command::Analyze)),
            Err(RunError::Usage(_))
        ));
        assert!(matches!(
            run(&RunConfig::new(Command::Analyze).group("Z:4^2")),
            Err(RunError::Descriptor { .. })
        ));
        assert!(matches!(
            run(&RunConfig::new(Command::Analyze).group("C:4").workers(0)),
            Err(RunError::Usage(_))
        ));
        let mut csv_verify = RunConfig::new(Command::Verify).group("C:4");
        csv_verify.format = Format::Csv;
        assert!(matches!(run(&csv_verify), Err(RunError::Usage(_))));
    }

    #[test]
    fn precondition_failures_exit_2() {
        let env = run(&RunConfig::new(Command::Verify)
            .group("C:4")
            .theorem(TheoremSelector::N1))
        .unwrap();
        assert_eq!(env.exit_code, EXIT_USAGE);
        assert!(!env.results[0].errors.is_empty());
        assert!(!env.verified);
    }

    #[test]
    fn truncation_is_never_verified() {
        let mut config = RunConfig::new(Command::Verify)
            .group("Z:3^3")
            .theorem(TheoremSelector::P3);
        config.max_nodes = Some(1);
        let env = run(&config).unwrap();
        assert!(env.truncated);
        assert!(!env.verified);
        assert_eq!(env.exit_code, EXIT_USAGE);
        assert!(env.verdicts().next().is_none());
    }

    #[test]
    fn analyze_with_set() {
        let mut config = RunConfig::new(Command::Analyze).group("Z:2^4");
        config.set = Some("{1,2,4,8,15}".into());
        let env = run(&config).unwrap();
        let a = env.results[0].analysis.as_ref().unwrap();
        assert_eq!(a.maximal_subgroup_count, 15);
        assert_eq!(a.subgroup_count, Some(67));
        assert_eq!(a.max_sum_free_size, 8);
        let s = a.set.as_ref().unwrap();
        assert!(s.sum_free && !s.maximum);
        assert_eq!(s.locally_maximal, Some(true));
        assert_eq!(s.locally_maximal_naive, Some(true));
        assert_eq!(s.product_set.indices.len(), 11);
    }

    #[test]
    fn verify_single_pair() {
        let mut config = RunConfig::new(Command::Verify)
            .group("Z:3^1")
            .theorem(TheoremSelector::N2);
        config.set = Some("{1}".into());
        config.element = Some("1".into());
        let env = run(&config).unwrap();
        assert_eq!(env.exit_code, EXIT_OK);
        assert_eq!(env.results[0].verdicts.len(), 1);
    }
}
