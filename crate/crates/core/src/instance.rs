//! Plain-text instance files.
//!
//! ```text
//! # comment
//! [skill_space]
//! thetas = 0 1
//!
//! [distribution p]
//! probs = 1/2 1/2
//!
//! [signal_structure fine]
//! signals = s0:0 s1:1
//! row = 4/5 1/5
//! row = 1/5 4/5
//!
//! [firm]
//! task = 0 1
//!
//! [change]
//! p = p
//! q = q
//! coarse = coarse
//! fine = fine
//! ```
//!
//! Numbers are decimals or fractions `a/b`. A signal is `label` or
//! `label:value`. Optional reference sections are `[population]` (`p`, `q`,
//! `sig`), `[change]` (`p`, `q`, `coarse`, `fine`) and `[scenario]` (`p`,
//! `q_i`, `q_j`, `coarse`, `fine`).

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::discrimination::GapScenario;
use crate::error::ModelError;
use crate::model::{Dist, Firm, Population, Signal, SignalStructure, SkillSpace, Task};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("line {line}: {field}: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },
    #[error("{context}: {source}")]
    Invariant {
        context: String,
        #[source]
        source: ModelError,
    },
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("[{section}] refers to unknown {kind} {name:?}")]
    UnknownReference {
        section: String,
        kind: &'static str,
        name: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

type Res<T> = std::result::Result<T, InstanceError>;

/// Names of a population's components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationRef {
    pub p: String,
    pub q: String,
    pub sig: String,
}

/// Names of a single population moving between two structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeRef {
    pub p: String,
    pub q: String,
    pub coarse: String,
    pub fine: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioRef {
    pub p: String,
    pub q_i: String,
    pub q_j: String,
    pub coarse: String,
    pub fine: String,
}

/// A single population moving from `coarse` to `fine`.
#[derive(Debug, Clone, PartialEq)]
pub struct Change<T> {
    pub firm: Firm<T>,
    pub p: Dist<T>,
    pub q: Dist<T>,
    pub coarse: SignalStructure<T>,
    pub fine: SignalStructure<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    pub space: SkillSpace<T>,
    pub distributions: Vec<(String, Dist<T>)>,
    pub structures: Vec<(String, SignalStructure<T>)>,
    pub firm: Option<Firm<T>>,
    pub population: Option<PopulationRef>,
    pub change: Option<ChangeRef>,
    pub scenario: Option<ScenarioRef>,
}

impl<T: Scalar> Instance<T> {
    pub fn new(space: SkillSpace<T>) -> Self {
        Self {
            space,
            distributions: vec![],
            structures: vec![],
            firm: None,
            population: None,
            change: None,
            scenario: None,
        }
    }

    pub fn distribution(&self, name: &str) -> Option<&Dist<T>> {
        self.distributions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }

    pub fn structure(&self, name: &str) -> Option<&SignalStructure<T>> {
        self.structures
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    /// Adds or replaces a distribution; returns its name.
    pub fn put_distribution(&mut self, name: &str, d: Dist<T>) -> String {
        match self.distributions.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = d,
            None => self.distributions.push((name.to_string(), d)),
        }
        name.to_string()
    }

    pub fn put_structure(&mut self, name: &str, s: SignalStructure<T>) -> String {
        match self.structures.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = s,
            None => self.structures.push((name.to_string(), s)),
        }
        name.to_string()
    }

    /// Instance holding a gap scenario over the types `0..n`.
    pub fn from_scenario(sc: &GapScenario<T>) -> Self {
        let mut inst = Self::new(SkillSpace::range(sc.p.len()).expect("at least two types"));
        inst.scenario = Some(ScenarioRef {
            p: inst.put_distribution("p", sc.p.clone()),
            q_i: inst.put_distribution("q_i", sc.q_i.clone()),
            q_j: inst.put_distribution("q_j", sc.q_j.clone()),
            coarse: inst.put_structure("coarse", sc.coarse.clone()),
            fine: inst.put_structure("fine", sc.fine.clone()),
        });
        inst.firm = Some(sc.firm.clone());
        inst
    }

    pub fn from_change(c: &Change<T>) -> Self {
        let mut inst = Self::new(SkillSpace::range(c.p.len()).expect("at least two types"));
        inst.change = Some(ChangeRef {
            p: inst.put_distribution("p", c.p.clone()),
            q: inst.put_distribution("q", c.q.clone()),
            coarse: inst.put_structure("coarse", c.coarse.clone()),
            fine: inst.put_structure("fine", c.fine.clone()),
        });
        inst.firm = Some(c.firm.clone());
        inst
    }

    fn dist_ref(&self, section: &str, name: &str) -> Res<Dist<T>> {
        self.distribution(name)
            .cloned()
            .ok_or_else(|| InstanceError::UnknownReference {
                section: section.into(),
                kind: "distribution",
                name: name.into(),
            })
    }

    fn sig_ref(&self, section: &str, name: &str) -> Res<SignalStructure<T>> {
        self.structure(name)
            .cloned()
            .ok_or_else(|| InstanceError::UnknownReference {
                section: section.into(),
                kind: "signal structure",
                name: name.into(),
            })
    }

    fn firm_ref(&self) -> Res<Firm<T>> {
        self.firm
            .clone()
            .ok_or_else(|| InstanceError::MissingSection("firm".into()))
    }

    pub fn resolve_population(&self) -> Res<Population<T>> {
        let r = self
            .population
            .as_ref()
            .ok_or_else(|| InstanceError::MissingSection("population".into()))?;
        Population::new(
            self.dist_ref("population", &r.p)?,
            self.dist_ref("population", &r.q)?,
            self.sig_ref("population", &r.sig)?,
        )
        .map_err(|e| invariant("[population]", e))
    }

    pub fn resolve_change(&self) -> Res<Change<T>> {
        let r = self
            .change
            .as_ref()
            .ok_or_else(|| InstanceError::MissingSection("change".into()))?;
        let c = Change {
            firm: self.firm_ref()?,
            p: self.dist_ref("change", &r.p)?,
            q: self.dist_ref("change", &r.q)?,
            coarse: self.sig_ref("change", &r.coarse)?,
            fine: self.sig_ref("change", &r.fine)?,
        };
        c.p.ensure_full_support(&format!("distribution {:?}", r.p))
            .map_err(|e| invariant("[change]", e))?;
        c.q.ensure_full_support(&format!("distribution {:?}", r.q))
            .map_err(|e| invariant("[change]", e))?;
        Ok(c)
    }

    pub fn resolve_scenario(&self) -> Res<GapScenario<T>> {
        let r = self
            .scenario
            .as_ref()
            .ok_or_else(|| InstanceError::MissingSection("scenario".into()))?;
        GapScenario::new(
            self.firm_ref()?,
            self.dist_ref("scenario", &r.p)?,
            self.dist_ref("scenario", &r.q_i)?,
            self.dist_ref("scenario", &r.q_j)?,
            self.sig_ref("scenario", &r.coarse)?,
            self.sig_ref("scenario", &r.fine)?,
        )
        .map_err(|e| invariant("[scenario]", e))
    }

    /// Canonical text form. Parsing the output and serializing again gives
    /// the same bytes.
    pub fn to_text(&self) -> String {
        let nums = |v: &[T]| v.iter().map(Scalar::format).collect::<Vec<_>>().join(" ");
        let mut blocks: Vec<String> = vec![format!(
            "[skill_space]\nthetas = {}\n",
            nums(self.space.thetas())
        )];
        for (name, d) in &self.distributions {
            blocks.push(format!(
                "[distribution {name}]\nprobs = {}\n",
                nums(d.probs())
            ));
        }
        for (name, s) in &self.structures {
            let mut b = format!("[signal_structure {name}]\nsignals =");
            for sig in s.signals() {
                match &sig.value {
                    Some(v) => write!(b, " {}:{}", sig.label, v.format()),
                    None => write!(b, " {}", sig.label),
                }
                .expect("write to string");
            }
            b.push('\n');
            for row in s.rows() {
                writeln!(b, "row = {}", nums(row)).expect("write to string");
            }
            blocks.push(b);
        }
        if let Some(f) = &self.firm {
            let mut b = String::from("[firm]\n");
            for t in f.tasks() {
                writeln!(b, "task = {}", nums(t.surplus())).expect("write to string");
            }
            blocks.push(b);
        }
        if let Some(r) = &self.population {
            blocks.push(format!(
                "[population]\np = {}\nq = {}\nsig = {}\n",
                r.p, r.q, r.sig
            ));
        }
        if let Some(r) = &self.change {
            blocks.push(format!(
                "[change]\np = {}\nq = {}\ncoarse = {}\nfine = {}\n",
                r.p, r.q, r.coarse, r.fine
            ));
        }
        if let Some(r) = &self.scenario {
            blocks.push(format!(
                "[scenario]\np = {}\nq_i = {}\nq_j = {}\ncoarse = {}\nfine = {}\n",
                r.p, r.q_i, r.q_j, r.coarse, r.fine
            ));
        }
        blocks.join("\n")
    }

    pub fn parse(text: &str) -> Res<Self> {
        Parser::default().run(text)
    }

    pub fn load(path: &Path) -> Res<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| InstanceError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }
}

fn invariant(context: impl Into<String>, source: ModelError) -> InstanceError {
    InstanceError::Invariant {
        context: context.into(),
        source,
    }
}

fn parse_err(line: usize, field: impl Into<String>, message: impl Into<String>) -> InstanceError {
    InstanceError::Parse {
        line,
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    SkillSpace,
    Distribution,
    SignalStructure,
    Firm,
    Population,
    Change,
    Scenario,
}

/// Raw section collected before validation.
struct Section {
    kind: Kind,
    name: String,
    header_line: usize,
    entries: Vec<(usize, String, String)>,
}

impl Section {
    fn label(&self) -> String {
        let kind = match self.kind {
            Kind::SkillSpace => "skill_space",
            Kind::Distribution => "distribution",
            Kind::SignalStructure => "signal_structure",
            Kind::Firm => "firm",
            Kind::Population => "population",
            Kind::Change => "change",
            Kind::Scenario => "scenario",
        };
        if self.name.is_empty() {
            format!("[{kind}]")
        } else {
            format!("[{kind} {}]", self.name)
        }
    }

    fn single(&self, key: &str) -> Res<(usize, &str)> {
        let mut hits = self.entries.iter().filter(|(_, k, _)| k == key);
        let Some((line, _, v)) = hits.next() else {
            return Err(parse_err(
                self.header_line,
                key,
                format!("missing in {}", self.label()),
            ));
        };
        if let Some((dup, _, _)) = hits.next() {
            return Err(parse_err(*dup, key, "given more than once"));
        }
        Ok((*line, v.as_str()))
    }

    fn reference(&self, key: &str) -> Res<String> {
        let (line, v) = self.single(key)?;
        let mut words = v.split_whitespace();
        match (words.next(), words.next()) {
            (Some(w), None) => Ok(w.to_string()),
            _ => Err(parse_err(line, key, "expected a single name")),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Res<()> {
        for (line, k, _) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                return Err(parse_err(
                    *line,
                    k,
                    format!("unknown field in {}", self.label()),
                ));
            }
        }
        Ok(())
    }
}

fn numbers<T: Scalar>(line: usize, field: &str, v: &str) -> Res<Vec<T>> {
    v.split_whitespace()
        .enumerate()
        .map(|(i, w)| {
            T::parse(w).map_err(|e| parse_err(line, format!("{field}[{i}]"), e.to_string()))
        })
        .collect()
}

#[derive(Default)]
struct Parser {
    sections: Vec<Section>,
}

impl Parser {
    fn run<T: Scalar>(mut self, text: &str) -> Res<Instance<T>> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(inner) = body.strip_prefix('[') {
                let inner = inner
                    .strip_suffix(']')
                    .ok_or_else(|| parse_err(line, "section", "header must end with ']'"))?;
                self.sections.push(header(line, inner)?);
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| parse_err(line, body, "expected `key = value`"))?;
            let sec = self
                .sections
                .last_mut()
                .ok_or_else(|| parse_err(line, key.trim(), "field outside any section"))?;
            sec.entries
                .push((line, key.trim().to_string(), value.trim().to_string()));
        }
        self.build()
    }

    fn build<T: Scalar>(self) -> Res<Instance<T>> {
        let mut spaces = self.sections.iter().filter(|s| s.kind == Kind::SkillSpace);
        let space_sec = spaces
            .next()
            .ok_or_else(|| InstanceError::MissingSection("skill_space".into()))?;
        if let Some(dup) = spaces.next() {
            return Err(parse_err(
                dup.header_line,
                "skill_space",
                "section given more than once",
            ));
        }
        space_sec.check_keys(&["thetas"])?;
        let (line, v) = space_sec.single("thetas")?;
        let space = SkillSpace::new(numbers(line, "thetas", v)?)
            .map_err(|e| invariant("[skill_space]", e))?;
        let n = space.len();
        let mut inst = Instance::new(space);

        for sec in &self.sections {
            let duplicate = |names: Vec<&String>| names.contains(&&sec.name);
            match sec.kind {
                Kind::SkillSpace => {}
                Kind::Distribution => {
                    sec.check_keys(&["probs"])?;
                    if duplicate(inst.distributions.iter().map(|(n, _)| n).collect()) {
                        return Err(parse_err(sec.header_line, sec.label(), "duplicate name"));
                    }
                    let (line, v) = sec.single("probs")?;
                    let probs: Vec<T> = numbers(line, "probs", v)?;
                    if probs.len() != n {
                        return Err(parse_err(
                            line,
                            "probs",
                            format!("expected {n} entries, got {}", probs.len()),
                        ));
                    }
                    let d = Dist::new(probs).map_err(|e| invariant(sec.label(), e))?;
                    inst.distributions.push((sec.name.clone(), d));
                }
                Kind::SignalStructure => {
                    sec.check_keys(&["signals", "row"])?;
                    if duplicate(inst.structures.iter().map(|(n, _)| n).collect()) {
                        return Err(parse_err(sec.header_line, sec.label(), "duplicate name"));
                    }
                    let (sline, sv) = sec.single("signals")?;
                    let signals = sv
                        .split_whitespace()
                        .map(|w| match w.split_once(':') {
                            Some((label, value)) => T::parse(value)
                                .map(|v| Signal::valued(label, v))
                                .map_err(|e| {
                                    parse_err(sline, format!("signals[{label}]"), e.to_string())
                                }),
                            None => Ok(Signal::label(w)),
                        })
                        .collect::<Res<Vec<_>>>()?;
                    let rows = sec
                        .entries
                        .iter()
                        .filter(|(_, k, _)| k == "row")
                        .map(|(line, _, v)| {
                            let row: Vec<T> = numbers(*line, "row", v)?;
                            if row.len() != signals.len() {
                                return Err(parse_err(
                                    *line,
                                    "row",
                                    format!(
                                        "expected {} entries, got {}",
                                        signals.len(),
                                        row.len()
                                    ),
                                ));
                            }
                            Ok(row)
                        })
                        .collect::<Res<Vec<_>>>()?;
                    if rows.len() != n {
                        return Err(parse_err(
                            sec.header_line,
                            "row",
                            format!("expected one row per skill type ({n}), got {}", rows.len()),
                        ));
                    }
                    let s = SignalStructure::new(signals, rows)
                        .map_err(|e| invariant(sec.label(), e))?;
                    inst.structures.push((sec.name.clone(), s));
                }
                Kind::Firm => {
                    sec.check_keys(&["task"])?;
                    if inst.firm.is_some() {
                        return Err(parse_err(
                            sec.header_line,
                            "firm",
                            "section given more than once",
                        ));
                    }
                    let tasks = sec
                        .entries
                        .iter()
                        .map(|(line, _, v)| {
                            let t: Vec<T> = numbers(*line, "task", v)?;
                            if t.len() != n {
                                return Err(parse_err(
                                    *line,
                                    "task",
                                    format!("expected {n} entries, got {}", t.len()),
                                ));
                            }
                            Ok(Task(t))
                        })
                        .collect::<Res<Vec<_>>>()?;
                    inst.firm = Some(Firm::new(tasks).map_err(|e| invariant("[firm]", e))?);
                }
                Kind::Population => {
                    sec.check_keys(&["p", "q", "sig"])?;
                    inst.population = Some(PopulationRef {
                        p: sec.reference("p")?,
                        q: sec.reference("q")?,
                        sig: sec.reference("sig")?,
                    });
                }
                Kind::Change => {
                    sec.check_keys(&["p", "q", "coarse", "fine"])?;
                    inst.change = Some(ChangeRef {
                        p: sec.reference("p")?,
                        q: sec.reference("q")?,
                        coarse: sec.reference("coarse")?,
                        fine: sec.reference("fine")?,
                    });
                }
                Kind::Scenario => {
                    sec.check_keys(&["p", "q_i", "q_j", "coarse", "fine"])?;
                    inst.scenario = Some(ScenarioRef {
                        p: sec.reference("p")?,
                        q_i: sec.reference("q_i")?,
                        q_j: sec.reference("q_j")?,
                        coarse: sec.reference("coarse")?,
                        fine: sec.reference("fine")?,
                    });
                }
            }
        }
        Ok(inst)
    }
}

fn header(line: usize, inner: &str) -> Res<Section> {
    let mut words = inner.split_whitespace();
    let kind_word = words
        .next()
        .ok_or_else(|| parse_err(line, "section", "empty header"))?;
    let name = words.next().unwrap_or("").to_string();
    if words.next().is_some() {
        return Err(parse_err(line, "section", "too many words in header"));
    }
    let (kind, named) = match kind_word {
        "skill_space" => (Kind::SkillSpace, false),
        "distribution" => (Kind::Distribution, true),
        "signal_structure" => (Kind::SignalStructure, true),
        "firm" => (Kind::Firm, false),
        "population" => (Kind::Population, false),
        "change" => (Kind::Change, false),
        "scenario" => (Kind::Scenario, false),
        other => {
            return Err(parse_err(
                line,
                "section",
                format!("unknown section {other:?}"),
            ))
        }
    };
    if named == name.is_empty() {
        let msg = if named {
            "section needs a name"
        } else {
            "section takes no name"
        };
        return Err(parse_err(line, kind_word, msg));
    }
    Ok(Section {
        kind,
        name,
        header_line: line,
        entries: vec![],
    })
}
