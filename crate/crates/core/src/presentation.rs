//! Finite presentations of ordinal graphs.
//!
//! A presentation lists vertices, leveled generators and one unfolding
//! rule per generator of level ≥ 1. A generator of level k stands for a
//! path of length ω^k; its rule `p = a b … t` says that p factors as the
//! word `a b …` (strictly lower level) followed by the same-level tail t,
//! which determines every proper prefix of p.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::path;

/// Index of a vertex in its [`Presentation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

/// Index of a generator in its [`Presentation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

/// Unfolding rule of a level-k generator: a nonempty word of lower-level
/// letters followed by a same-level tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub word: Vec<GenId>,
    pub tail: GenId,
}

#[derive(Debug, Clone)]
pub struct GenData {
    pub name: String,
    pub level: u32,
    pub source: VertexId,
    pub range: VertexId,
    pub rule: Option<Rule>,
}

/// Eventually periodic tail chain of a generator: `states` holds the
/// first `rho + cycle` visits; from step `rho` on, the chain repeats with
/// period `cycle`.
#[derive(Debug, Clone)]
pub struct Lasso {
    pub states: Vec<GenId>,
    pub rho: usize,
    pub cycle: usize,
}

impl Lasso {
    /// Chain generator after `n` unfolding steps.
    pub fn state(&self, n: usize) -> GenId {
        if n < self.states.len() {
            self.states[n]
        } else {
            self.states[self.rho + (n - self.rho) % self.cycle]
        }
    }
}

#[derive(Debug, Clone)]
pub struct Presentation {
    name: String,
    analogue: bool,
    vertices: Vec<String>,
    gens: Vec<GenData>,
    vertex_index: HashMap<String, VertexId>,
    gen_index: HashMap<String, GenId>,
    lassos: Vec<Option<Lasso>>,
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// True for builtins that are finite analogues of infinite graphs.
    pub fn is_finite_analogue(&self) -> bool {
        self.analogue
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn gen(&self, g: GenId) -> &GenData {
        &self.gens[g.0 as usize]
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.gen_index.get(name).copied()
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.gens[g.0 as usize].name
    }

    pub fn level(&self, g: GenId) -> u32 {
        self.gens[g.0 as usize].level
    }

    /// Maximal generator level present; 0 for a pure digraph (or an
    /// empty presentation).
    pub fn max_level(&self) -> u32 {
        self.gens.iter().map(|g| g.level).max().unwrap_or(0)
    }

    pub fn gens_at_level(&self, k: u32) -> impl Iterator<Item = GenId> + '_ {
        self.gens()
            .filter(move |&g| self.gen(g).level == k)
    }

    pub fn gens_below_level(&self, k: u32) -> impl Iterator<Item = GenId> + '_ {
        self.gens().filter(move |&g| self.gen(g).level < k)
    }

    pub fn lasso(&self, g: GenId) -> Option<&Lasso> {
        self.lassos[g.0 as usize].as_ref()
    }

    /// Vertices source-reachable from `v` through generators of level
    /// < k (arcs range → source), including `v` itself.
    pub fn reach_below(&self, v: VertexId, k: u32) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![v];
        seen[v.0 as usize] = true;
        while let Some(u) = stack.pop() {
            for g in self.gens_below_level(k) {
                let d = self.gen(g);
                if d.range == u && !seen[d.source.0 as usize] {
                    seen[d.source.0 as usize] = true;
                    stack.push(d.source);
                }
            }
        }
        self.vertices()
            .filter(|w| seen[w.0 as usize])
            .collect()
    }

    /// Prints the presentation back in DSL form.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        if !self.vertices.is_empty() {
            out.push_str("vertex");
            for v in &self.vertices {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        for g in &self.gens {
            let src = self.vertex_name(g.source);
            let rng = self.vertex_name(g.range);
            match &g.rule {
                None => out.push_str(&format!("edge {} : {} -> {}\n", g.name, src, rng)),
                Some(rule) => {
                    let mut rhs: Vec<&str> =
                        rule.word.iter().map(|&w| self.gen_name(w)).collect();
                    rhs.push(self.gen_name(rule.tail));
                    out.push_str(&format!(
                        "gen {} level {} : {} -> {} = {}\n",
                        g.name,
                        g.level,
                        src,
                        rng,
                        rhs.join(" ")
                    ));
                }
            }
        }
        out
    }

    /// Checks every semantic invariant and lists the violations; an
    /// empty report means the presentation is a valid ordinal-graph
    /// presentation.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut structural_ok = vec![true; self.gens.len()];
        for g in self.gens() {
            let d = self.gen(g);
            match (&d.rule, d.level) {
                (Some(_), 0) => {
                    issues.push(Issue::RuleOnEdge { gen: g });
                    structural_ok[g.0 as usize] = false;
                }
                (None, k) if k >= 1 => {
                    issues.push(Issue::MissingRule { gen: g });
                    structural_ok[g.0 as usize] = false;
                }
                (Some(rule), k) => {
                    let ok = self.check_rule(g, rule, k, &mut issues);
                    structural_ok[g.0 as usize] = ok;
                }
                (None, 0) => {}
                _ => unreachable!(),
            }
        }
        // The collision check only makes sense once chains unfold
        // properly, so skip it when structure is already broken.
        if issues.is_empty() {
            for k in 1..=self.max_level() {
                let level_gens: Vec<GenId> = self.gens_at_level(k).collect();
                for (i, &a) in level_gens.iter().enumerate() {
                    for &b in &level_gens[i + 1..] {
                        let (da, db) = (self.gen(a), self.gen(b));
                        if da.source != db.source || da.range != db.range {
                            continue;
                        }
                        let pa = path::Path::generator(self, a);
                        let pb = path::Path::generator(self, b);
                        if path::equals(self, &pa, &pb) {
                            issues.push(Issue::Collision { a, b });
                        }
                    }
                }
            }
        }
        let _ = structural_ok;
        ValidationReport { issues }
    }

    fn check_rule(&self, g: GenId, rule: &Rule, k: u32, issues: &mut Vec<Issue>) -> bool {
        let mut ok = true;
        let d = self.gen(g);
        if rule.word.is_empty() {
            issues.push(Issue::Productivity {
                gen: g,
                detail: "rule word is empty before the tail".into(),
            });
            return false;
        }
        for (i, &w) in rule.word.iter().enumerate() {
            if self.level(w) >= k {
                issues.push(Issue::LetterLevel {
                    gen: g,
                    letter: w,
                    position: i,
                });
                ok = false;
            }
        }
        if self.level(rule.tail) != k {
            issues.push(Issue::TailLevel { gen: g, tail: rule.tail });
            ok = false;
        }
        if !ok {
            return false;
        }
        if self.gen(rule.word[0]).range != d.range {
            issues.push(Issue::RangeMismatch { gen: g });
            ok = false;
        }
        for i in 0..rule.word.len() - 1 {
            if self.gen(rule.word[i]).source != self.gen(rule.word[i + 1]).range {
                issues.push(Issue::NonComposable { gen: g, position: i });
                ok = false;
            }
        }
        if self.gen(*rule.word.last().unwrap()).source != self.gen(rule.tail).range {
            issues.push(Issue::WordTailGap { gen: g });
            ok = false;
        }
        if self.gen(rule.tail).source != d.source {
            issues.push(Issue::SourceMismatch { gen: g });
            ok = false;
        }
        if !rule.word.iter().any(|&w| self.level(w) + 1 == k) {
            issues.push(Issue::Productivity {
                gen: g,
                detail: format!("rule word has no letter of level {}", k - 1),
            });
            ok = false;
        }
        ok
    }
}

/// A violated presentation invariant together with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    RuleOnEdge { gen: GenId },
    MissingRule { gen: GenId },
    LetterLevel { gen: GenId, letter: GenId, position: usize },
    TailLevel { gen: GenId, tail: GenId },
    RangeMismatch { gen: GenId },
    SourceMismatch { gen: GenId },
    NonComposable { gen: GenId, position: usize },
    WordTailGap { gen: GenId },
    Productivity { gen: GenId, detail: String },
    Collision { a: GenId, b: GenId },
}

/// Result of [`Presentation::validate`]; empty means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn render(&self, pres: &Presentation) -> String {
        let gn = |g: &GenId| pres.gen_name(*g).to_string();
        self.issues
            .iter()
            .map(|issue| match issue {
                Issue::RuleOnEdge { gen } => {
                    format!("level-0 generator {} must not carry a rule", gn(gen))
                }
                Issue::MissingRule { gen } => {
                    format!("generator {} of level >= 1 has no rule", gn(gen))
                }
                Issue::LetterLevel { gen, letter, position } => format!(
                    "rule of {}: letter {} at position {} is not of strictly lower level",
                    gn(gen),
                    gn(letter),
                    position
                ),
                Issue::TailLevel { gen, tail } => format!(
                    "rule of {}: tail {} is not of the same level",
                    gn(gen),
                    gn(tail)
                ),
                Issue::RangeMismatch { gen } => format!(
                    "rule of {}: range of the generator differs from the range of the first letter",
                    gn(gen)
                ),
                Issue::SourceMismatch { gen } => format!(
                    "rule of {}: source of the generator differs from the source of the tail",
                    gn(gen)
                ),
                Issue::NonComposable { gen, position } => format!(
                    "rule of {}: letters at positions {} and {} are not composable",
                    gn(gen),
                    position,
                    position + 1
                ),
                Issue::WordTailGap { gen } => format!(
                    "rule of {}: source of the last letter differs from the range of the tail",
                    gn(gen)
                ),
                Issue::Productivity { gen, detail } => {
                    format!("rule of {}: {}", gn(gen), detail)
                }
                Issue::Collision { a, b } => format!(
                    "generators {} and {} denote the same morphism",
                    gn(a),
                    gn(b)
                ),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Build-time error: name resolution and structural problems.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate definition of {0}")]
    Duplicate(String),
    #[error("unknown identifier {0}")]
    Unknown(String),
    #[error("generator {0}: a rule needs at least a word letter and a tail")]
    ShortRule(String),
}

/// Incremental construction of a [`Presentation`]; names are resolved
/// and the tail chains precomputed in [`PresentationBuilder::build`].
#[derive(Debug, Default)]
pub struct PresentationBuilder {
    name: String,
    analogue: bool,
    vertices: Vec<String>,
    gens: Vec<(String, u32, String, String, Option<(Vec<String>, String)>)>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        PresentationBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn analogue(mut self) -> Self {
        self.analogue = true;
        self
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> &mut Self {
        self.vertices.push(name.into());
        self
    }

    pub fn edge(
        &mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
    ) -> &mut Self {
        self.gens
            .push((name.into(), 0, source.into(), range.into(), None));
        self
    }

    /// `rhs` is the rule in paper order: word letters then the tail.
    pub fn gen(
        &mut self,
        name: impl Into<String>,
        level: u32,
        source: impl Into<String>,
        range: impl Into<String>,
        rhs: &[&str],
    ) -> &mut Self {
        let word: Vec<String> = rhs[..rhs.len().saturating_sub(1)]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let tail = rhs.last().map(|s| s.to_string()).unwrap_or_default();
        self.gens.push((
            name.into(),
            level,
            source.into(),
            range.into(),
            Some((word, tail)),
        ));
        self
    }

    pub fn build(self) -> Result<Presentation, BuildError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i as u32)).is_some() {
                return Err(BuildError::Duplicate(v.clone()));
            }
        }
        let mut gen_index = HashMap::new();
        for (i, (name, ..)) in self.gens.iter().enumerate() {
            if vertex_index.contains_key(name) {
                return Err(BuildError::Duplicate(name.clone()));
            }
            if gen_index.insert(name.clone(), GenId(i as u32)).is_some() {
                return Err(BuildError::Duplicate(name.clone()));
            }
        }
        let lookup_v = |n: &String| {
            vertex_index
                .get(n)
                .copied()
                .ok_or_else(|| BuildError::Unknown(n.clone()))
        };
        let lookup_g = |n: &String| {
            gen_index
                .get(n)
                .copied()
                .ok_or_else(|| BuildError::Unknown(n.clone()))
        };
        let mut gens = Vec::new();
        for (name, level, src, rng, rule) in &self.gens {
            let rule = match rule {
                None => None,
                Some((word, tail)) => {
                    if tail.is_empty() {
                        return Err(BuildError::ShortRule(name.clone()));
                    }
                    Some(Rule {
                        word: word.iter().map(lookup_g).collect::<Result<_, _>>()?,
                        tail: lookup_g(tail)?,
                    })
                }
            };
            gens.push(GenData {
                name: name.clone(),
                level: *level,
                source: lookup_v(src)?,
                range: lookup_v(rng)?,
                rule,
            });
        }
        let lassos = compute_lassos(&gens);
        Ok(Presentation {
            name: self.name,
            analogue: self.analogue,
            vertices: self.vertices,
            gens,
            vertex_index,
            gen_index,
            lassos,
        })
    }
}

fn compute_lassos(gens: &[GenData]) -> Vec<Option<Lasso>> {
    gens.iter()
        .enumerate()
        .map(|(i, d)| {
            d.rule.as_ref()?;
            let mut states = Vec::new();
            let mut seen: HashMap<GenId, usize> = HashMap::new();
            let mut cur = GenId(i as u32);
            loop {
                if let Some(&at) = seen.get(&cur) {
                    let cycle = states.len() - at;
                    return Some(Lasso {
                        states,
                        rho: at,
                        cycle,
                    });
                }
                seen.insert(cur, states.len());
                states.push(cur);
                cur = gens[cur.0 as usize].rule.as_ref()?.tail;
            }
        })
        .collect()
}

/// Syntax error with 1-based line and column.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePresentationError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Build(#[from] BuildError),
}

struct Tok {
    text: String,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(at) => &line[..at],
            None => line,
        };
        let mut col = 0;
        let chars: Vec<char> = line.chars().collect();
        while col < chars.len() {
            let c = chars[col];
            if c.is_whitespace() {
                col += 1;
                continue;
            }
            let start = col;
            let text = if c.is_alphanumeric() || c == '_' || c == '\'' {
                while col < chars.len()
                    && (chars[col].is_alphanumeric() || chars[col] == '_' || chars[col] == '\'')
                {
                    col += 1;
                }
                chars[start..col].iter().collect::<String>()
            } else if c == '-' && chars.get(col + 1) == Some(&'>') {
                col += 2;
                "->".to_string()
            } else {
                col += 1;
                c.to_string()
            };
            toks.push(Tok {
                text,
                line: ln + 1,
                col: start + 1,
            });
        }
    }
    toks
}

const KEYWORDS: &[&str] = &["vertex", "edge", "gen", "level"];

struct DslParser {
    toks: Vec<Tok>,
    at: usize,
    last_line: usize,
    last_col: usize,
}

impl DslParser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParsePresentationError> {
        let (line, col) = match self.toks.get(self.at) {
            Some(t) => (t.line, t.col),
            None => (self.last_line, self.last_col),
        };
        Err(ParsePresentationError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&str> {
        self.toks.get(self.at).map(|t| t.text.as_str())
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.at);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, what: &str) -> Result<(), ParsePresentationError> {
        if self.peek() == Some(what) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", what))
        }
    }

    fn ident(&mut self) -> Result<String, ParsePresentationError> {
        match self.peek() {
            Some(t)
                if !KEYWORDS.contains(&t)
                    && t.chars()
                        .next()
                        .map(|c| c.is_alphanumeric() || c == '_')
                        .unwrap_or(false) =>
            {
                Ok(self.bump().unwrap().text.clone())
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn nat(&mut self) -> Result<u32, ParsePresentationError> {
        match self.peek() {
            Some(t) if t.chars().all(|c| c.is_ascii_digit()) => {
                let t = self.bump().unwrap();
                t.text
                    .parse()
                    .map_err(|_| ParsePresentationError::Syntax {
                        line: t.line,
                        col: t.col,
                        msg: "level out of range".into(),
                    })
            }
            _ => self.err("expected a level number"),
        }
    }
}

/// Parses the presentation DSL.
///
/// ```text
/// file := stmt*
/// stmt := "vertex" IDENT+
///       | "edge" IDENT ":" IDENT "->" IDENT
///       | "gen" IDENT "level" NAT ":" IDENT "->" IDENT "=" IDENT+
/// ```
/// `#` starts a comment to end of line. In `edge e : u -> w` the arrow
/// points source → range. In a `gen` statement the right-hand side is
/// the rule word (range-side letter first) followed by the tail.
pub fn parse_presentation(name: &str, text: &str) -> Result<Presentation, ParsePresentationError> {
    let toks = tokenize(text);
    let (last_line, last_col) = toks
        .last()
        .map(|t| (t.line, t.col + t.text.len()))
        .unwrap_or((1, 1));
    let mut p = DslParser {
        toks,
        at: 0,
        last_line,
        last_col,
    };
    let mut builder = PresentationBuilder::new(name);
    while let Some(tok) = p.peek() {
        match tok {
            "vertex" => {
                p.bump();
                let first = p.ident()?;
                builder.vertex(first);
                while let Some(t) = p.peek() {
                    if KEYWORDS.contains(&t) {
                        break;
                    }
                    builder.vertex(p.ident()?);
                }
            }
            "edge" => {
                p.bump();
                let name = p.ident()?;
                p.expect(":")?;
                let src = p.ident()?;
                p.expect("->")?;
                let rng = p.ident()?;
                builder.edge(name, src, rng);
            }
            "gen" => {
                p.bump();
                let name = p.ident()?;
                p.expect("level")?;
                let level = p.nat()?;
                p.expect(":")?;
                let src = p.ident()?;
                p.expect("->")?;
                let rng = p.ident()?;
                p.expect("=")?;
                let mut rhs = vec![p.ident()?];
                while let Some(t) = p.peek() {
                    if KEYWORDS.contains(&t) {
                        break;
                    }
                    rhs.push(p.ident()?);
                }
                let rhs_refs: Vec<&str> = rhs.iter().map(|s| s.as_str()).collect();
                builder.gen(name, level, src, rng, &rhs_refs);
            }
            _ => return p.err("expected 'vertex', 'edge' or 'gen'"),
        }
    }
    Ok(builder.build()?)
}

/// Error from [`builtin`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("unknown builtin {0}")]
    Unknown(String),
    #[error("invalid parameters for {0}: {1}")]
    InvalidParams(String, String),
}

/// Returns a named builtin presentation.
///
/// Recognized names: `interval_omega2`, `two_loop`, `two_plus_two`,
/// `long_path_trunc(N)` with N ≥ 2 and `cantor_trunc(L,K)` with
/// L, K ≥ 1. The parameterized ones are finite analogues of infinite
/// graphs and are flagged as such (see
/// [`Presentation::is_finite_analogue`]).
pub fn builtin(spec: &str) -> Result<Presentation, BuiltinError> {
    let spec = spec.trim();
    let (name, params) = match spec.find('(') {
        None => (spec, Vec::new()),
        Some(at) => {
            let inner = spec[at..]
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| BuiltinError::Unknown(spec.to_string()))?;
            let params: Result<Vec<u32>, _> =
                inner.split(',').map(|p| p.trim().parse::<u32>()).collect();
            (
                &spec[..at],
                params.map_err(|_| {
                    BuiltinError::InvalidParams(spec[..at].to_string(), "not a number".into())
                })?,
            )
        }
    };
    let built = match (name, params.as_slice()) {
        ("interval_omega2", []) => {
            let mut b = PresentationBuilder::new("interval_omega2");
            b.vertex("v");
            b.edge("e", "v", "v");
            b.gen("f", 1, "v", "v", &["e", "f"]);
            b.build()
        }
        ("two_loop", []) => {
            let mut b = PresentationBuilder::new("two_loop");
            b.vertex("v");
            b.edge("e", "v", "v");
            b.edge("f", "v", "v");
            b.gen("g", 1, "v", "v", &["e", "f", "g"]);
            b.build()
        }
        ("two_plus_two", []) => {
            let mut b = PresentationBuilder::new("two_plus_two");
            b.vertex("v");
            b.edge("e", "v", "v");
            b.edge("f", "v", "v");
            b.gen("g", 1, "v", "v", &["e", "g"]);
            b.gen("h", 1, "v", "v", &["f", "h"]);
            b.build()
        }
        ("long_path_trunc", [n]) => {
            let n = *n as usize;
            if n < 2 {
                return Err(BuiltinError::InvalidParams(
                    name.into(),
                    "N must be at least 2".into(),
                ));
            }
            let mut b = PresentationBuilder::new(format!("long_path_trunc({})", n)).analogue();
            for i in 0..n {
                b.vertex(format!("v{}", i));
            }
            for i in 0..n {
                b.edge(format!("f{}", i), format!("v{}", i), format!("v{}", i));
                b.edge(
                    format!("e{}", i),
                    format!("v{}", (i + 1) % n),
                    format!("v{}", i),
                );
            }
            for i in 0..n {
                let rhs = [
                    format!("f{}", i),
                    format!("e{}", i),
                    format!("g{}", (i + 1) % n),
                ];
                let rhs_refs: Vec<&str> = rhs.iter().map(|s| s.as_str()).collect();
                b.gen(format!("g{}", i), 1, "v0", format!("v{}", i), &rhs_refs);
            }
            b.build()
        }
        ("cantor_trunc", [l, k]) => {
            let (l, k) = (*l as usize, *k as u32);
            if l < 1 || k < 1 {
                return Err(BuiltinError::InvalidParams(
                    name.into(),
                    "L and K must be at least 1".into(),
                ));
            }
            build_cantor_trunc(l, k)
        }
        _ => return Err(BuiltinError::Unknown(spec.to_string())),
    };
    Ok(built.expect("builtin construction is well-formed"))
}

/// Shift-register analogue of the Cantor-indexed graph: generators are
/// indexed by binary strings of length `l`, prepend-and-drop replaces
/// the prepend, levels run 0..k.
fn build_cantor_trunc(l: usize, k: u32) -> Result<Presentation, BuildError> {
    let strings: Vec<String> = (0..(1usize << l))
        .map(|bits| (0..l).map(|i| if bits >> (l - 1 - i) & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let shift = |bit: char, x: &str| -> String {
        let mut s = String::with_capacity(l);
        s.push(bit);
        s.push_str(&x[..l - 1]);
        s
    };
    let mut b = PresentationBuilder::new(format!("cantor_trunc({},{})", l, k)).analogue();
    for x in &strings {
        b.vertex(format!("v{}", x));
    }
    // level 0: e loops at v_{0x}, f loops at v_{1x}, g: v_{0x} -> v_{1x},
    // h: v_{1x} -> v_{0x}
    for x in &strings {
        let v0 = format!("v{}", shift('0', x));
        let v1 = format!("v{}", shift('1', x));
        b.edge(format!("e{}_0", x), v0.clone(), v0.clone());
        b.edge(format!("f{}_0", x), v1.clone(), v1.clone());
        b.edge(format!("g{}_0", x), v0.clone(), v1.clone());
        b.edge(format!("h{}_0", x), v1.clone(), v0.clone());
    }
    // endpoints per family, tracked while levels stack up
    let mut src: HashMap<String, String> = HashMap::new();
    let mut rng: HashMap<String, String> = HashMap::new();
    for x in &strings {
        let v0 = format!("v{}", shift('0', x));
        let v1 = format!("v{}", shift('1', x));
        src.insert(format!("e{}_0", x), v0.clone());
        rng.insert(format!("e{}_0", x), v0.clone());
        src.insert(format!("f{}_0", x), v1.clone());
        rng.insert(format!("f{}_0", x), v1.clone());
        src.insert(format!("g{}_0", x), v0.clone());
        rng.insert(format!("g{}_0", x), v1.clone());
        src.insert(format!("h{}_0", x), v1.clone());
        rng.insert(format!("h{}_0", x), v0.clone());
    }
    for a in 1..k {
        for x in &strings {
            let x0 = shift('0', x);
            let x1 = shift('1', x);
            let below = a - 1;
            // e_x^a = e_{0x}^{a-1} e_x^a
            let e = format!("e{}_{}", x, a);
            let le = format!("e{}_{}", x0, below);
            src.insert(e.clone(), src[&le].clone());
            rng.insert(e.clone(), rng[&le].clone());
            b.gen(e.clone(), a, src[&e].clone(), rng[&e].clone(), &[&le, &e]);
            // f_x^a = f_{1x}^{a-1} f_x^a
            let f = format!("f{}_{}", x, a);
            let lf = format!("f{}_{}", x1, below);
            src.insert(f.clone(), src[&lf].clone());
            rng.insert(f.clone(), rng[&lf].clone());
            b.gen(f.clone(), a, src[&f].clone(), rng[&f].clone(), &[&lf, &f]);
            // g_x^a = g_{1x}^{a-1} h_{1x}^{a-1} g_x^a
            let g = format!("g{}_{}", x, a);
            let lg = format!("g{}_{}", x1, below);
            let lh = format!("h{}_{}", x1, below);
            let sg = format!("g{}_{}", x0, below);
            src.insert(g.clone(), src[&sg].clone());
            rng.insert(g.clone(), rng[&lg].clone());
            b.gen(g.clone(), a, src[&g].clone(), rng[&g].clone(), &[&lg, &lh, &g]);
            // h_x^a = h_{0x}^{a-1} g_{0x}^{a-1} h_x^a
            let h = format!("h{}_{}", x, a);
            let lh0 = format!("h{}_{}", x0, below);
            let lg0 = format!("g{}_{}", x0, below);
            let sh = format!("h{}_{}", x1, below);
            src.insert(h.clone(), src[&sh].clone());
            rng.insert(h.clone(), rng[&lh0].clone());
            b.gen(h.clone(), a, src[&h].clone(), rng[&h].clone(), &[&lh0, &lg0, &h]);
        }
    }
    b.build()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dsl())
    }
}
