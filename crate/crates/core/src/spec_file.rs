//! The declarative input format and its interpreter.
//!
//! A spec is a sequence of sections. Each section header names a kind and an
//! identifier, followed by `key = value` lines; `#` starts a comment.
//!
//! ```text
//! [group G]
//! cyclic = 4
//!
//! [group H]
//! cyclic = 2
//!
//! [hom i]
//! source = G
//! target = H
//! map = 0 1 0 1
//!
//! [crossed X]
//! boundary = i
//! action = trivial
//!
//! [command]
//! run = cohomology
//! crossed = X
//! coeff = GF(2)
//! max-degree = 3
//! ```
//!
//! Groups: `cyclic = n`, `symmetric = n`, `product = A B …`, or
//! `table = row; row; …` (element 0 is the identity). Homomorphisms give
//! `map` (image of every element) or `images` (images of the generators).
//! Actions give `actor`, `space` and `table` (row `h` lists `g^h`), or
//! `kind = trivial | conjugation`. Crossed modules give `boundary` and
//! `action` (a declared action, `trivial`, or `conjugation` for a normal
//! inclusion), or one of `of-group`, `of-abelian`, `central-extension`.
//! Morphisms give `source`, `target`, `phi`, `psi`. Modules give `group` or
//! `arithmetic`, then one `matrix = …` line per generator (or `trivial = d`,
//! `standard = on`), and optionally `exterior = k`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::crossed::{CrossedModule, CrossedModuleMorphism};
use crate::error::{Error, Result};
use crate::group::{direct_product, make_cyclic, FiniteGroup, GroupAction, GroupHom};
use crate::group_cohomology::{
    bar_cohomology_with_budget, gl2z_cohomology, invariants, sl2z_cohomology, ArithmeticGroupTag, ModuleRep,
    RepGroup, BAR_BUDGET,
};
use crate::homology::{cohomology, CohomologyOptions, Coefficients};
use crate::linalg::{Field, RatMatrix};
use crate::nerve::{check_kan, NerveLevels, DEFAULT_BUDGET};
use crate::structural::{
    compact_cokernel_cohomology, e2_page, finite_cokernel_cohomology, free_gca_dims, kernel_torus_cohomology,
    kunneth, string_group, Cokernel, CompactGroupSpec, LieType, Variant,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Validate,
    Nerve,
    Cohomology,
    GroupCohomology,
    E2Page,
    Structural,
}

impl FromStr for CommandKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "validate" => Ok(CommandKind::Validate),
            "nerve" => Ok(CommandKind::Nerve),
            "cohomology" => Ok(CommandKind::Cohomology),
            "group-cohomology" => Ok(CommandKind::GroupCohomology),
            "e2-page" => Ok(CommandKind::E2Page),
            "structural" => Ok(CommandKind::Structural),
            other => Err(Error::Unsupported(format!("unknown command {other:?}"))),
        }
    }
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Validate => "validate",
            CommandKind::Nerve => "nerve",
            CommandKind::Cohomology => "cohomology",
            CommandKind::GroupCohomology => "group-cohomology",
            CommandKind::E2Page => "e2-page",
            CommandKind::Structural => "structural",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            CommandKind::Validate => &[],
            CommandKind::Nerve => &["crossed", "max-level", "budget", "kan"],
            CommandKind::Cohomology => &["crossed", "coeff", "max-degree", "budget", "normalized"],
            CommandKind::GroupCohomology => &["module", "coeff", "max-degree", "budget", "character"],
            CommandKind::E2Page => &["variant", "n", "pmax", "qmax"],
            CommandKind::Structural => &[
                "kind",
                "generators",
                "left",
                "right",
                "rank",
                "module",
                "lie-type",
                "center-rank",
                "transgression",
                "torus-rank",
                "truncation",
            ],
        }
    }
}

/// The `[command]` block: a command and its parameters, each with the line
/// it came from (0 for values set on the command line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub line: usize,
    pub params: BTreeMap<String, (usize, String)>,
}

impl Command {
    pub fn new(kind: CommandKind) -> Self {
        Command { kind, line: 0, params: BTreeMap::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.params.insert(key.to_string(), (0, value.into()));
    }

    fn raw(&self, key: &str) -> Option<(usize, &str)> {
        self.params.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse { line: line.max(self.line), message: format!("invalid value {v:?} for {key}") }),
        }
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn require(&self, key: &str) -> Result<(usize, &str)> {
        self.raw(key)
            .ok_or_else(|| Error::Parse { line: self.line, message: format!("{} needs `{key}`", self.kind.name()) })
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool> {
        match self.raw(key) {
            None => Ok(default),
            Some((_, "on" | "true" | "yes")) => Ok(true),
            Some((_, "off" | "false" | "no")) => Ok(false),
            Some((line, v)) => Err(Error::Parse { line: line.max(self.line), message: format!("{key} must be on or off, got {v:?}") }),
        }
    }
}

/// A parsed and validated spec. Objects are kept by name.
#[derive(Clone, Debug, Default)]
pub struct SpecFile {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub homs: BTreeMap<String, GroupHom>,
    pub actions: BTreeMap<String, GroupAction>,
    pub crossed: BTreeMap<String, CrossedModule>,
    pub morphisms: BTreeMap<String, CrossedModuleMorphism>,
    pub modules: BTreeMap<String, ModuleRep>,
    pub command: Option<Command>,
}

struct Section {
    kind: String,
    name: String,
    line: usize,
    entries: Vec<(String, String, usize)>,
}

impl Section {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, message: format!("{} {}: {}", self.kind, self.name, message.into()) }
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        for (k, _, line) in &self.entries {
            if !keys.contains(&k.as_str()) {
                return Err(Error::Parse { line: *line, message: format!("unknown key {k:?} in {} {}", self.kind, self.name) });
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.entries.iter().find(|e| e.0 == key).map(|e| (e.1.as_str(), e.2))
    }

    fn all(&self, key: &str) -> Vec<(&str, usize)> {
        self.entries.iter().filter(|e| e.0 == key).map(|e| (e.1.as_str(), e.2)).collect()
    }

    fn require(&self, key: &str) -> Result<(&str, usize)> {
        self.get(key).ok_or_else(|| self.err(format!("missing `{key}`")))
    }

    /// Attaches the section's position to a validation failure.
    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::InvalidHom { reason, witness: Some((x, y)) } => {
                self.err(format!("not a homomorphism: {reason} (witness pair ({x}, {y}))"))
            }
            Error::Parse { .. } => e,
            other => self.err(other.to_string()),
        })
    }
}

fn parse_uint(v: &str, line: usize) -> Result<usize> {
    v.trim().parse().map_err(|_| Error::Parse { line, message: format!("expected a non-negative integer, got {v:?}") })
}

fn parse_uints(v: &str, line: usize) -> Result<Vec<usize>> {
    v.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(|t| parse_uint(t, line)).collect()
}

fn parse_ints(v: &str, line: usize) -> Result<Vec<i64>> {
    v.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse { line, message: format!("expected an integer, got {t:?}") }))
        .collect()
}

fn parse_table(v: &str, line: usize) -> Result<Vec<Vec<usize>>> {
    v.split(';').map(|row| parse_uints(row, line)).collect()
}

fn parse_matrix(v: &str, line: usize) -> Result<RatMatrix> {
    let rows: Vec<Vec<BigRational>> = v
        .split(';')
        .map(|row| {
            row.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| BigRational::from_str(t).map_err(|_| Error::Parse { line, message: format!("expected a rational number, got {t:?}") }))
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = RatMatrix::from_rows(&rows).map_err(|e| Error::Parse { line, message: e.to_string() })?;
    if !m.is_square() {
        return Err(Error::Parse { line, message: "matrix must be square".into() });
    }
    Ok(m)
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, what: &str, name: &str, line: usize) -> Result<&'a T> {
    map.get(name.trim()).ok_or_else(|| Error::Parse { line, message: format!("undeclared {what} {:?}", name.trim()) })
}

fn split_sections(text: &str) -> Result<(Vec<Section>, Option<Section>)> {
    let mut sections: Vec<Section> = Vec::new();
    let mut command: Option<Section> = None;
    let mut in_command = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(header) = body.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse { line, message: "unterminated section header".into() })?;
            let mut words = header.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let name = words.next().unwrap_or("").to_string();
            if words.next().is_some() {
                return Err(Error::Parse { line, message: "section header has extra words".into() });
            }
            let section = Section { kind: kind.clone(), name: name.clone(), line, entries: Vec::new() };
            if kind == "command" {
                if command.is_some() {
                    return Err(Error::Parse { line, message: "more than one [command] block".into() });
                }
                command = Some(section);
                in_command = true;
                continue;
            }
            if !["group", "hom", "action", "crossed", "morphism", "module"].contains(&kind.as_str()) {
                return Err(Error::Parse { line, message: format!("unknown section kind {kind:?}") });
            }
            if name.is_empty() {
                return Err(Error::Parse { line, message: format!("{kind} section needs a name") });
            }
            if sections.iter().any(|s| s.kind == kind && s.name == name) {
                return Err(Error::Parse { line, message: format!("{kind} {name} declared twice") });
            }
            sections.push(section);
            in_command = false;
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| Error::Parse { line, message: format!("expected `key = value`, got {body:?}") })?;
        let entry = (key.trim().to_string(), value.trim().to_string(), line);
        let target = if in_command { command.as_mut() } else { sections.last_mut() };
        target.ok_or_else(|| Error::Parse { line, message: "key outside of any section".into() })?.entries.push(entry);
    }
    Ok((sections, command))
}

/// Parses and validates a spec. Every error carries a line number.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let (sections, command) = split_sections(text)?;
    let mut spec = SpecFile::default();
    let of = |kind: &'static str| sections.iter().filter(move |s| s.kind == kind);

    for s in of("group") {
        let g = resolve_group(s, &spec.groups)?;
        spec.groups.insert(s.name.clone(), g);
    }
    for s in of("hom") {
        s.allow(&["source", "target", "map", "images"])?;
        let (src, l1) = s.require("source")?;
        let (tgt, l2) = s.require("target")?;
        let source = lookup(&spec.groups, "group", src, l1)?.clone();
        let target = lookup(&spec.groups, "group", tgt, l2)?.clone();
        let hom = match (s.get("map"), s.get("images")) {
            (Some((v, l)), None) => s.wrap(GroupHom::new(source, target, parse_uints(v, l)?))?,
            (None, Some((v, l))) => s.wrap(GroupHom::from_generator_images(source, target, &parse_uints(v, l)?))?,
            _ => return Err(s.err("give exactly one of `map` or `images`")),
        };
        spec.homs.insert(s.name.clone(), hom);
    }
    for s in of("action") {
        s.allow(&["actor", "space", "table", "kind"])?;
        let (a, l1) = s.require("actor")?;
        let (b, l2) = s.require("space")?;
        let actor = lookup(&spec.groups, "group", a, l1)?;
        let space = lookup(&spec.groups, "group", b, l2)?;
        let action = match (s.get("table"), s.get("kind")) {
            (Some((v, l)), None) => s.wrap(GroupAction::new(actor.clone(), space.clone(), &parse_table(v, l)?))?,
            (None, Some(("trivial", _))) => GroupAction::trivial(actor, space),
            (None, Some(("conjugation", _))) if actor == space => GroupAction::conjugation(actor),
            _ => return Err(s.err("give a `table`, or `kind = trivial` / `kind = conjugation`")),
        };
        spec.actions.insert(s.name.clone(), action);
    }
    for s in of("crossed") {
        s.allow(&["boundary", "action", "of-group", "of-abelian", "central-extension"])?;
        let cm = if let Some((v, l)) = s.get("of-group") {
            CrossedModule::of_group(lookup(&spec.groups, "group", v, l)?)
        } else if let Some((v, l)) = s.get("of-abelian") {
            s.wrap(CrossedModule::of_abelian(lookup(&spec.groups, "group", v, l)?))?
        } else if let Some((v, l)) = s.get("central-extension") {
            s.wrap(CrossedModule::central_extension(lookup(&spec.homs, "hom", v, l)?.clone()))?
        } else {
            let (b, l) = s.require("boundary")?;
            let i = lookup(&spec.homs, "hom", b, l)?.clone();
            match s.get("action") {
                None | Some(("trivial", _)) => s.wrap(CrossedModule::with_trivial_action(i))?,
                Some(("conjugation", _)) => s.wrap(CrossedModule::normal_inclusion(i))?,
                Some((name, l)) => {
                    let action = lookup(&spec.actions, "action", name, l)?.clone();
                    s.wrap(CrossedModule::new(i, action))?
                }
            }
        };
        spec.crossed.insert(s.name.clone(), cm);
    }
    for s in of("morphism") {
        s.allow(&["source", "target", "phi", "psi"])?;
        let get = |key: &str, map: &BTreeMap<String, CrossedModule>| -> Result<CrossedModule> {
            let (v, l) = s.require(key)?;
            lookup(map, "crossed module", v, l).cloned()
        };
        let source = get("source", &spec.crossed)?;
        let target = get("target", &spec.crossed)?;
        let (p, l1) = s.require("phi")?;
        let (q, l2) = s.require("psi")?;
        let phi = lookup(&spec.homs, "hom", p, l1)?.clone();
        let psi = lookup(&spec.homs, "hom", q, l2)?.clone();
        let m = s.wrap(CrossedModuleMorphism::new(source, target, phi, psi))?;
        spec.morphisms.insert(s.name.clone(), m);
    }
    for s in of("module") {
        let m = resolve_module(s, &spec.groups)?;
        spec.modules.insert(s.name.clone(), m);
    }

    if let Some(c) = command {
        let (run, l) = c.require("run")?;
        let kind = CommandKind::from_str(run).map_err(|e| Error::Parse { line: l, message: e.to_string() })?;
        let mut cmd = Command { kind, line: c.line, params: BTreeMap::new() };
        for (k, v, line) in &c.entries {
            if k == "run" {
                continue;
            }
            if !kind.keys().contains(&k.as_str()) {
                return Err(Error::Parse { line: *line, message: format!("unknown key {k:?} for {}", kind.name()) });
            }
            cmd.params.insert(k.clone(), (*line, v.clone()));
        }
        spec.command = Some(cmd);
    }
    Ok(spec)
}

fn resolve_group(s: &Section, groups: &BTreeMap<String, FiniteGroup>) -> Result<FiniteGroup> {
    s.allow(&["cyclic", "symmetric", "product", "table"])?;
    if s.entries.len() != 1 {
        return Err(s.err("give exactly one of `cyclic`, `symmetric`, `product`, `table`"));
    }
    let (key, v, l) = &s.entries[0];
    match key.as_str() {
        "cyclic" => s.wrap(make_cyclic(parse_uint(v, *l)?)),
        "symmetric" => s.wrap(FiniteGroup::symmetric(parse_uint(v, *l)?)),
        "product" => {
            let mut factors = v.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty());
            let first = factors.next().ok_or_else(|| s.err("empty product"))?;
            let mut acc = lookup(groups, "group", first, *l)?.clone();
            for f in factors {
                acc = direct_product(&acc, lookup(groups, "group", f, *l)?);
            }
            Ok(acc)
        }
        _ => s.wrap(FiniteGroup::from_table(&parse_table(v, *l)?)),
    }
}

fn resolve_module(s: &Section, groups: &BTreeMap<String, FiniteGroup>) -> Result<ModuleRep> {
    s.allow(&["group", "arithmetic", "matrix", "trivial", "standard", "exterior"])?;
    let matrices = s.all("matrix").into_iter().map(|(v, l)| parse_matrix(v, l)).collect::<Result<Vec<_>>>()?;
    let base = match (s.get("group"), s.get("arithmetic")) {
        (Some((g, l)), None) => {
            let group = lookup(groups, "group", g, l)?;
            match s.get("trivial") {
                Some((d, l)) => ModuleRep::trivial(group, parse_uint(d, l)?),
                None => s.wrap(ModuleRep::from_generator_images(group, &matrices))?,
            }
        }
        (None, Some((t, l))) => {
            let tag = ArithmeticGroupTag::parse(t).map_err(|e| Error::Parse { line: l, message: e.to_string() })?;
            if matches!(s.get("standard"), Some(("on" | "true", _))) {
                ModuleRep::standard(tag)
            } else {
                s.wrap(ModuleRep::arithmetic(tag, matrices))?
            }
        }
        _ => return Err(s.err("give exactly one of `group` or `arithmetic`")),
    };
    match s.get("exterior") {
        Some((k, l)) => s.wrap(base.exterior_power(parse_uint(k, l)?)),
        None => Ok(base),
    }
}

/// Result of running one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: CommandKind,
    pub parameters: BTreeMap<String, String>,
    /// `ok`, `budget-exceeded`, or `error`.
    pub status: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_note: Option<String>,
    pub timings_ms: BTreeMap<String, u128>,
    pub exit_code: i32,
}

impl Report {
    fn ok(cmd: &Command, result: Value) -> Self {
        Report {
            command: cmd.kind,
            parameters: cmd.params.iter().map(|(k, (_, v))| (k.clone(), v.clone())).collect(),
            status: "ok".into(),
            result,
            statement: None,
            budget_note: None,
            timings_ms: BTreeMap::new(),
            exit_code: 0,
        }
    }

    /// Pretty JSON; timings are the only part that varies between runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn without_timings(mut self) -> Self {
        self.timings_ms.clear();
        self
    }
}

/// Runs the spec file's command block.
pub fn run(spec: &SpecFile) -> Result<Report> {
    let cmd = spec.command.as_ref().ok_or(Error::Parse { line: 0, message: "no [command] block".into() })?;
    run_command(spec, cmd)
}

pub fn run_command(spec: &SpecFile, cmd: &Command) -> Result<Report> {
    for key in cmd.params.keys() {
        if !cmd.kind.keys().contains(&key.as_str()) {
            return Err(Error::Parse { line: cmd.line, message: format!("unknown key {key:?} for {}", cmd.kind.name()) });
        }
    }
    let start = Instant::now();
    let mut report = match cmd.kind {
        CommandKind::Validate => run_validate(spec, cmd),
        CommandKind::Nerve => run_nerve(spec, cmd),
        CommandKind::Cohomology => run_cohomology(spec, cmd),
        CommandKind::GroupCohomology => run_group_cohomology(spec, cmd),
        CommandKind::E2Page => run_e2_page(cmd),
        CommandKind::Structural => run_structural(spec, cmd),
    }?;
    report.timings_ms.insert("total".into(), start.elapsed().as_millis());
    Ok(report)
}

fn crossed_module<'a>(spec: &'a SpecFile, cmd: &Command) -> Result<(&'a str, &'a CrossedModule)> {
    match cmd.raw("crossed") {
        Some((line, name)) => spec
            .crossed
            .get_key_value(name)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| Error::Parse { line: line.max(cmd.line), message: format!("undeclared crossed module {name:?}") }),
        None if spec.crossed.len() == 1 => Ok(spec.crossed.iter().next().map(|(k, v)| (k.as_str(), v)).unwrap()),
        None => Err(Error::Parse { line: cmd.line, message: format!("{} needs `crossed`", cmd.kind.name()) }),
    }
}

fn run_validate(spec: &SpecFile, cmd: &Command) -> Result<Report> {
    let groups: BTreeMap<&String, Value> = spec
        .groups
        .iter()
        .map(|(k, g)| (k, json!({ "order": g.order(), "abelian": g.is_abelian(), "generators": g.generators() })))
        .collect();
    let crossed: BTreeMap<&String, Value> = spec
        .crossed
        .iter()
        .map(|(k, cm)| {
            let inv = cm.homotopy_invariants();
            (
                k,
                json!({
                    "order_g": cm.g().order(),
                    "order_h": cm.h().order(),
                    "pi1_order": inv.pi_low.order(),
                    "pi2_order": inv.pi_high.order(),
                    "action_trivial": cm.action().is_trivial(),
                    "violations": cm.validate().violations.len(),
                }),
            )
        })
        .collect();
    let morphisms: BTreeMap<&String, Value> =
        spec.morphisms.iter().map(|(k, m)| (k, json!({ "equivalence": m.is_equivalence() }))).collect();
    let modules: BTreeMap<&String, Value> = spec.modules.iter().map(|(k, m)| (k, json!({ "dim": m.dim() }))).collect();
    if spec.crossed.values().any(|cm| !cm.validate().is_valid()) {
        return Err(Error::Internal("a validated crossed module fails its identities".into()));
    }
    Ok(Report::ok(
        cmd,
        json!({
            "groups": groups,
            "homs": spec.homs.keys().collect::<Vec<_>>(),
            "actions": spec.actions.keys().collect::<Vec<_>>(),
            "crossed": crossed,
            "morphisms": morphisms,
            "modules": modules,
        }),
    ))
}

fn run_nerve(spec: &SpecFile, cmd: &Command) -> Result<Report> {
    let (name, cm) = crossed_module(spec, cmd)?;
    let max_level: usize = cmd.get_or("max-level", 3)?;
    let budget: u64 = cmd.get_or("budget", DEFAULT_BUDGET)?;
    let kan_max: usize = cmd.get_or("kan", max_level.min(3))?;
    let levels = NerveLevels::new(cm.clone(), max_level.max(kan_max), budget);
    let table: Vec<Value> = (0..=max_level)
        .map(|p| {
            let all = levels.level_count(p);
            let nd = levels.nondegenerate_count(p);
            json!({
                "level": p,
                "simplices": all.to_string(),
                "nondegenerate": nd.to_string(),
                "degenerate": (&all - &nd).to_string(),
            })
        })
        .collect();
    let mut kan = Vec::new();
    for m in 1..=kan_max.min(4) {
        for j in 0..=m {
            kan.push(check_kan(&levels, m, j)?);
        }
    }
    Ok(Report::ok(cmd, json!({ "crossed": name, "levels": table, "kan": kan })))
}

fn run_cohomology(spec: &SpecFile, cmd: &Command) -> Result<Report> {
    let (name, cm) = crossed_module(spec, cmd)?;
    let coeffs: Coefficients = cmd.get_or("coeff", Coefficients::Integers)?;
    let max_degree: usize = cmd.get_or("max-degree", 4)?;
    let budget: u64 = cmd.get_or("budget", DEFAULT_BUDGET)?;
    let normalized = cmd.flag("normalized", true)?;
    let opts = CohomologyOptions::new(max_degree).budget(budget).normalized(normalized);
    match cohomology(cm, coeffs, &opts) {
        Ok(res) => Ok(cohomology_report(cmd, name, res)),
        Err(Error::BudgetExceeded { level, required, budget, achievable }) => {
            let partial = match achievable {
                Some(d) => Some(cohomology(cm, coeffs, &CohomologyOptions { max_degree: d, ..opts.clone() })?),
                None => None,
            };
            let mut report = match partial {
                Some(res) => cohomology_report(cmd, name, res),
                None => Report::ok(cmd, json!({ "crossed": name })),
            };
            report.status = "budget-exceeded".into();
            report.exit_code = 2;
            report.budget_note = Some(format!(
                "level {level} needs {required} simplices, budget is {budget}; computed through degree {}",
                achievable.map_or("none".to_string(), |d| d.to_string())
            ));
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn cohomology_report(cmd: &Command, name: &str, res: crate::homology::CohomologyResult) -> Report {
    let timings: BTreeMap<String, u128> =
        res.degrees.iter().filter_map(|d| d.elapsed_ms.map(|t| (format!("degree {}", d.degree), t))).collect();
    let res = res.without_timings();
    let betti = res.ranks();
    let mut r = Report::ok(cmd, json!({ "crossed": name, "betti": betti, "cohomology": res }));
    r.timings_ms = timings;
    r
}

fn field_of(c: Coefficients) -> Result<Field> {
    match c {
        Coefficients::Rationals => Ok(Field::Rationals),
        Coefficients::Prime(p) => Ok(Field::Prime(p)),
        Coefficients::Integers => Err(Error::Unsupported("group cohomology is computed over a field".into())),
    }
}

fn run_group_cohomology(spec: &SpecFile, cmd: &Command) -> Result<Report> {
    let (line, name) = cmd.require("module")?;
    let module = lookup(&spec.modules, "module", name, line.max(cmd.line))?;
    let coeffs: Coefficients = cmd.get_or("coeff", Coefficients::Rationals)?;
    let max_n: usize = cmd.get_or("max-degree", 3)?;
    let budget: u64 = cmd.get_or("budget", BAR_BUDGET)?;
    let character = match cmd.raw("character") {
        Some((l, v)) => Some(parse_ints(v, l.max(cmd.line))?),
        None => None,
    };
    let fixed = invariants(module, character.as_deref())?.len();
    let (dims, method): (Vec<Option<usize>>, &str) = match module.group() {
        RepGroup::Finite(_) => {
            let d = bar_cohomology_with_budget(module, max_n, field_of(coeffs)?, budget)?;
            (d.into_iter().map(Some).collect(), "bar complex")
        }
        RepGroup::Arithmetic(tag) => {
            if coeffs != Coefficients::Rationals {
                return Err(Error::Unsupported("arithmetic groups are handled over Q only".into()));
            }
            match tag {
                ArithmeticGroupTag::SL2Z => (sl2z_cohomology(module, max_n)?.into_iter().map(Some).collect(), "amalgam Z/4 *_{Z/2} Z/6"),
                ArithmeticGroupTag::GL2Z => {
                    (gl2z_cohomology(module, max_n)?.into_iter().map(Some).collect(), "invariants of the outer Z/2 on SL(2,Z)")
                }
                _ => ((0..=max_n).map(|n| (n == 0).then_some(fixed)).collect(), "degree 0 only"),
            }
        }
    };
    Ok(Report::ok(
        cmd,
        json!({ "module": name, "dim": module.dim(), "betti": dims, "fixed_vectors": fixed, "method": method }),
    ))
}

fn run_e2_page(cmd: &Command) -> Result<Report> {
    let variant: Variant = cmd.get_or("variant", Variant::SL)?;
    let n: usize = cmd.get_or("n", 2)?;
    let pmax: usize = cmd.get_or("pmax", 3)?;
    let qmax: usize = cmd.get_or("qmax", 3 * n.max(1))?;
    let page = e2_page(variant, n, pmax, qmax)?;
    let nonzero: Vec<Value> = page.nonzero().into_iter().map(|(p, q, d)| json!({ "p": p, "q": q, "dim": d })).collect();
    let mut r = Report::ok(cmd, json!({ "page": page, "nonzero": nonzero }));
    let group = match variant {
        Variant::SL => "SL",
        Variant::GL => "GL",
    };
    r.statement = Some(format!(
        "E2^{{p,q}} = H^p({group}({n},Z), Λ^{{q/3}} Q^{n}), concentrated in bidegrees (p, 3k); \
         for n ≤ 2 the SL page is Q at (0,0) and (0,3n), the GL page is Q at (0,0)"
    ));
    Ok(r)
}

fn run_structural(spec: &SpecFile, cmd: &Command) -> Result<Report> {
    let (_, kind) = cmd.require("kind")?;
    let n: usize = cmd.get_or("truncation", 12)?;
    let gens = |key: &str| -> Result<Vec<usize>> {
        let (l, v) = cmd.require(key)?;
        parse_uints(v, l.max(cmd.line))
    };
    let (dims, statement) = match kind {
        "free-gca" => (free_gca_dims(&gens("generators")?, n)?, "S(V): exterior on odd generators, polynomial on even ones"),
        "kernel-torus" => (
            kernel_torus_cohomology(cmd.get_or("rank", 1)?, n),
            "H([A → 1]) ≅ S(a*[3]) for a compact abelian kernel A with Lie algebra a",
        ),
        "kunneth" => (
            kunneth(&free_gca_dims(&gens("left")?, n)?, &free_gca_dims(&gens("right")?, n)?)?,
            "H(X × Y) ≅ H(X) ⊗ H(Y)",
        ),
        "finite-cokernel" => {
            let (l, name) = cmd.require("module")?;
            let module = lookup(&spec.modules, "module", name, l.max(cmd.line))?;
            let k = cmd.get_or("rank", module.dim())?;
            (finite_cokernel_cohomology(k, module, n)?, "H([G → H]) ≅ (S(k*[3]))^C, concentrated in degrees 3q")
        }
        "string-group" => {
            let (l, t) = cmd.require("lie-type")?;
            let ty = LieType::parse(t).map_err(|e| Error::Parse { line: l.max(cmd.line), message: e.to_string() })?;
            (string_group(ty, n), "H(String(G)) ≅ S(y₂, …, y_r): the degree-4 generator is killed")
        }
        "compact-cokernel" => {
            let center_rank: usize = cmd.get_or("center-rank", 1)?;
            let transgression_rank: usize = cmd.get_or("transgression", 0)?;
            let cokernel = if let Some((l, t)) = cmd.raw("lie-type") {
                Cokernel::Simple(LieType::parse(t).map_err(|e| Error::Parse { line: l.max(cmd.line), message: e.to_string() })?)
            } else if let Some(r) = cmd.get::<usize>("torus-rank")? {
                Cokernel::Torus(r)
            } else {
                let (l, name) = cmd.require("module")?;
                Cokernel::Finite(lookup(&spec.modules, "module", name, l.max(cmd.line))?.clone())
            };
            let s = CompactGroupSpec { center_rank, cokernel, transgression_rank };
            (compact_cokernel_cohomology(&s, n)?, "H ≅ H(BC)/(im T) ⊗ S(ker T[3]) for the transgression T")
        }
        other => {
            let line = cmd.raw("kind").map_or(cmd.line, |(l, _)| l.max(cmd.line));
            return Err(Error::Parse { line, message: format!("unknown structural kind {other:?}") });
        }
    };
    let mut r = Report::ok(cmd, json!({ "kind": kind, "dims": dims, "support": dims.support() }));
    r.statement = Some(statement.into());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4_TO_Z2: &str = "
[group G]
cyclic = 4
[group H]
cyclic = 2
[hom i]
source = G
target = H
map = 0 1 0 1
[crossed X]
boundary = i
";

    fn parse_err_line(text: &str) -> (usize, String) {
        match parse_spec(text) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_spec_runs() {
        let text = "[group A]\ncyclic = 2\n[crossed K]\nof-abelian = A\n[command]\nrun = cohomology\ncoeff = GF(2)\nmax-degree = 3\n";
        let report = run(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(report.result["betti"], json!([1, 0, 1, 1]));
        assert_eq!(report.exit_code, 0);
    }

    #[test]
    fn rational_cohomology_of_k_z2_2() {
        let text = "[group A]\ncyclic = 2\n[crossed K]\nof-abelian = A\n[command]\nrun = cohomology\ncoeff = Q\nmax-degree = 4\n";
        let report = run(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(report.result["betti"], json!([1, 0, 0, 0, 0]));
    }

    #[test]
    fn validate_z4_to_z2() {
        let spec = parse_spec(&format!("{Z4_TO_Z2}[command]\nrun = validate\n")).unwrap();
        let report = run(&spec).unwrap();
        assert_eq!(report.status, "ok");
        assert_eq!(report.result["crossed"]["X"]["pi2_order"], json!(2));
        assert_eq!(report.result["crossed"]["X"]["pi1_order"], json!(1));
    }

    #[test]
    fn non_homomorphism_is_rejected_with_a_witness() {
        let text = "[group G]\ncyclic = 4\n[group H]\ncyclic = 2\n[hom f]\nsource = G\ntarget = H\nmap = 0 1 1 1\n";
        let (line, message) = parse_err_line(text);
        assert_eq!(line, 5);
        assert!(message.contains("witness pair"), "{message}");
    }

    #[test]
    fn undeclared_names_are_reported() {
        let text = "[group G]\ncyclic = 4\n[hom f]\nsource = G\ntarget = Missing\nmap = 0 0 0 0\n";
        let (line, message) = parse_err_line(text);
        assert_eq!(line, 5);
        assert!(message.contains("Missing"));
    }

    #[test]
    fn malformed_input_never_panics() {
        for text in [
            "[group",
            "key = value",
            "[group G]\ncyclic = x",
            "[group G]\ntable = 0 1; 1 1",
            "[widget W]",
            "[group G]\ncyclic = 2\n[group G]\ncyclic = 3",
            "[command]\nrun = fly",
            "[command]\nrun = nerve\ncolour = blue",
            "[group G]\ncyclic = 2\n[module M]\ngroup = G\nmatrix = 1 2; 3",
        ] {
            assert!(matches!(parse_spec(text), Err(Error::Parse { .. })), "{text:?}");
        }
    }

    #[test]
    fn e2_page_sl2() {
        let spec = parse_spec("[command]\nrun = e2-page\nvariant = SL\nn = 2\n").unwrap();
        let report = run(&spec).unwrap();
        assert_eq!(report.result["nonzero"], json!([{ "p": 0, "q": 0, "dim": 1 }, { "p": 0, "q": 6, "dim": 1 }]));
        assert!(report.statement.is_some());
    }

    #[test]
    fn group_cohomology_of_a_sign_module() {
        let text = "[group C]\ncyclic = 2\n[module M]\ngroup = C\nmatrix = -1\n[command]\nrun = group-cohomology\nmodule = M\ncoeff = GF(3)\nmax-degree = 2\n";
        let report = run(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(report.result["betti"], json!([0, 0, 0]));
        let text = "[module L]\narithmetic = SL2Z\nstandard = on\nexterior = 2\n[command]\nrun = group-cohomology\nmodule = L\n";
        let report = run(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(report.result["betti"], json!([1, 0, 0, 0]));
    }

    #[test]
    fn structural_string_group() {
        let text = "[command]\nrun = structural\nkind = string-group\nlie-type = A2\ntruncation = 12\n";
        let report = run(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(report.result["support"], json!([0, 6, 12]));
    }

    #[test]
    fn nerve_report_and_budget() {
        let spec = parse_spec(&format!("{Z4_TO_Z2}[command]\nrun = nerve\nmax-level = 3\n")).unwrap();
        let report = run(&spec).unwrap();
        assert_eq!(report.result["levels"][2]["simplices"], json!("16"));
        let spec = parse_spec(&format!("{Z4_TO_Z2}[command]\nrun = cohomology\nbudget = 100\nmax-degree = 5\n")).unwrap();
        let report = run(&spec).unwrap();
        assert_eq!(report.exit_code, 2);
        assert!(report.budget_note.is_some());
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = parse_spec(&format!("{Z4_TO_Z2}[command]\nrun = cohomology\ncoeff = Z\nmax-degree = 3\n")).unwrap();
        let a = run(&spec).unwrap().without_timings().to_json();
        let b = run(&spec).unwrap().without_timings().to_json();
        assert_eq!(a, b);
    }
}
