use std::collections::HashSet;
use std::fmt::Write as _;

use super::ast::{Expr, Span};
use super::lexer::{tokenize, Tok};
use super::parser::{Parser, Scope};
use super::{AlgdefError, ErrorKind};
use crate::kernel::SeriesFunction;

/// `name = rhs`, used for macros and for the three structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub rhs: Expr,
    pub span: Span,
}

/// `[left, right] = rhs`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketDef {
    pub left: String,
    pub right: String,
    pub rhs: Expr,
    pub span: Span,
}

/// An identification entry is kept as text because its right-hand side is
/// written in the generators of another presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDefinition {
    pub name: String,
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub target: String,
    pub entries: Vec<RawDefinition>,
}

/// A parsed Hopf algebra presentation. Generators are listed in PBW order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfPresentation {
    pub name: String,
    pub generators: Vec<String>,
    /// Goodness of each generator, parallel to `generators`.
    pub grading: Vec<i8>,
    pub series: Vec<String>,
    pub center: Vec<String>,
    pub macros: Vec<Definition>,
    pub brackets: Vec<BracketDef>,
    pub coproduct: Vec<Definition>,
    pub counit: Vec<Definition>,
    pub antipode: Vec<Definition>,
    pub identification: Option<Identification>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Generators,
    Grading,
    Series,
    Center,
    Macros,
    Brackets,
    Coproduct,
    Counit,
    Antipode,
    Identify,
}

impl Section {
    fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "GENERATORS" => Self::Generators,
            "GRADING" => Self::Grading,
            "SERIES" => Self::Series,
            "CENTER" => Self::Center,
            "MACROS" => Self::Macros,
            "BRACKETS" => Self::Brackets,
            "COPRODUCT" => Self::Coproduct,
            "COUNIT" => Self::Counit,
            "ANTIPODE" => Self::Antipode,
            "IDENTIFY" => Self::Identify,
            _ => return None,
        })
    }

    fn takes_expressions(self) -> bool {
        matches!(
            self,
            Self::Macros | Self::Brackets | Self::Coproduct | Self::Counit | Self::Antipode | Self::Identify
        )
    }
}

/// One statement: its physical lines with line numbers and column offsets.
struct Statement<'a> {
    pieces: Vec<(usize, &'a str)>,
}

impl Statement<'_> {
    fn span(&self) -> Span {
        let (line, text) = self.pieces[0];
        let col = text.len() - text.trim_start().len() + 1;
        Span { line, col }
    }

    fn text(&self) -> String {
        self.pieces.iter().map(|(_, t)| t.trim()).collect::<Vec<_>>().join(" ")
    }
}

struct Block<'a> {
    section: Section,
    header_span: Span,
    argument: Option<String>,
    statements: Vec<Statement<'a>>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn valid_generator_name(name: &str) -> bool {
    let core = name.strip_suffix(['+', '-']).unwrap_or(name);
    let mut chars = core.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !reserved(core)
}

fn reserved(name: &str) -> bool {
    matches!(name, "z" | "ox") || SeriesFunction::from_name(name).is_ok()
}

fn err<T>(kind: ErrorKind, span: Span) -> Result<T, AlgdefError> {
    Err(AlgdefError::new(kind, span))
}

impl HopfPresentation {
    pub fn parse(source: &str) -> Result<Self, AlgdefError> {
        let mut name: Option<String> = None;
        let mut blocks: Vec<Block> = Vec::new();
        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let span = Span { line: line_no, col: indent + 1 };
            let mut words = trimmed.split_whitespace();
            let first = words.next().unwrap();
            if first == "ALGEBRA" {
                let value = words.next();
                match (value, words.next(), &name) {
                    (_, _, Some(_)) => return err(ErrorKind::Syntax("duplicate ALGEBRA line".into()), span),
                    (Some(v), None, None) => name = Some(v.to_string()),
                    _ => return err(ErrorKind::Syntax("expected 'ALGEBRA <name>'".into()), span),
                }
                continue;
            }
            if let Some(section) = Section::from_keyword(first) {
                let argument = words.next().map(str::to_string);
                if words.next().is_some() || (argument.is_some() != (section == Section::Identify)) {
                    return err(ErrorKind::Syntax(format!("malformed {first} header")), span);
                }
                if blocks.iter().any(|b| b.section == section) {
                    return err(ErrorKind::Syntax(format!("duplicate {first} section")), span);
                }
                blocks.push(Block { section, header_span: span, argument, statements: Vec::new() });
                continue;
            }
            let Some(block) = blocks.last_mut() else {
                return err(ErrorKind::Syntax("statement outside of any section".into()), span);
            };
            let continues = block.section.takes_expressions()
                && (trimmed.starts_with('+') || trimmed.starts_with('-'))
                && !block.statements.is_empty();
            if continues {
                block.statements.last_mut().unwrap().pieces.push((line_no, line));
            } else {
                block.statements.push(Statement { pieces: vec![(line_no, line)] });
            }
        }
        let name = name.ok_or_else(|| AlgdefError::new(ErrorKind::Syntax("missing ALGEBRA line".into()), Span { line: 1, col: 1 }))?;

        // Generators first: the lexer needs their names.
        let Some(gen_block) = blocks.iter().find(|b| b.section == Section::Generators) else {
            return err(ErrorKind::Syntax("missing GENERATORS section".into()), Span { line: 1, col: 1 });
        };
        let mut generators: Vec<String> = Vec::new();
        for st in &gen_block.statements {
            for (line, text) in &st.pieces {
                for word in text.split_whitespace() {
                    let col = text.find(word).unwrap() + 1;
                    let span = Span { line: *line, col };
                    if !valid_generator_name(word) {
                        return err(ErrorKind::Syntax(format!("invalid generator name '{word}'")), span);
                    }
                    if generators.iter().any(|g| g == word) {
                        return err(ErrorKind::DuplicateDefinition(word.to_string()), span);
                    }
                    generators.push(word.to_string());
                }
            }
        }
        if generators.len() > usize::from(u8::MAX) {
            return err(ErrorKind::Syntax("too many generators".into()), gen_block.header_span);
        }
        let gen_set: HashSet<String> = generators.iter().cloned().collect();

        let mut pres = HopfPresentation {
            name,
            grading: vec![0; generators.len()],
            generators,
            series: Vec::new(),
            center: Vec::new(),
            macros: Vec::new(),
            brackets: Vec::new(),
            coproduct: Vec::new(),
            counit: Vec::new(),
            antipode: Vec::new(),
            identification: None,
        };

        let name_list = |st: &Statement, out: &mut Vec<String>| -> Result<(), AlgdefError> {
            for (line, text) in &st.pieces {
                for word in text.split_whitespace() {
                    let span = Span { line: *line, col: text.find(word).unwrap() + 1 };
                    if !gen_set.contains(word) {
                        return err(ErrorKind::UndeclaredSymbol(word.to_string()), span);
                    }
                    if !out.iter().any(|g| g == word) {
                        out.push(word.to_string());
                    }
                }
            }
            Ok(())
        };

        // Series and macros must be known before any expression is parsed.
        for block in &blocks {
            match block.section {
                Section::Series => {
                    for st in &block.statements {
                        name_list(st, &mut pres.series)?;
                    }
                }
                Section::Center => {
                    for st in &block.statements {
                        name_list(st, &mut pres.center)?;
                    }
                }
                Section::Grading => {
                    for st in &block.statements {
                        let text = st.text();
                        let span = st.span();
                        let (grade, names) = text
                            .split_once(':')
                            .ok_or_else(|| AlgdefError::new(ErrorKind::Syntax("expected '<grade>: <generators>'".into()), span))?;
                        let grade: i8 = grade
                            .trim()
                            .trim_start_matches('+')
                            .parse()
                            .map_err(|_| AlgdefError::new(ErrorKind::Syntax(format!("bad grade '{}'", grade.trim())), span))?;
                        for word in names.split_whitespace() {
                            let idx = pres
                                .generators
                                .iter()
                                .position(|g| g == word)
                                .ok_or_else(|| AlgdefError::new(ErrorKind::UndeclaredSymbol(word.to_string()), span))?;
                            pres.grading[idx] = grade;
                        }
                    }
                }
                _ => {}
            }
        }
        let series_set: HashSet<String> = pres.series.iter().cloned().collect();
        let mut macro_set: HashSet<String> = HashSet::new();

        let mut order: Vec<&Block> = blocks.iter().collect();
        order.sort_by_key(|b| b.section != Section::Macros);
        for block in order {
            if !block.section.takes_expressions() {
                continue;
            }
            if block.section == Section::Identify {
                let mut entries = Vec::new();
                for st in &block.statements {
                    let text = st.text();
                    let span = st.span();
                    let (lhs, rhs) = text
                        .split_once('=')
                        .ok_or_else(|| AlgdefError::new(ErrorKind::Syntax("expected '<generator> = <expression>'".into()), span))?;
                    let lhs = lhs.trim();
                    if !gen_set.contains(lhs) {
                        return err(ErrorKind::UndeclaredSymbol(lhs.to_string()), span);
                    }
                    if entries.iter().any(|e: &RawDefinition| e.name == lhs) {
                        return err(ErrorKind::DuplicateDefinition(lhs.to_string()), span);
                    }
                    entries.push(RawDefinition { name: lhs.to_string(), text: rhs.trim().to_string(), span });
                }
                pres.identification = Some(Identification { target: block.argument.clone().unwrap(), entries });
                continue;
            }
            for st in &block.statements {
                let toks = tokenize(&st.pieces, &gen_set)?;
                let scope = Scope { generators: &gen_set, series: &series_set, macros: &macro_set };
                let mut p = Parser::new(toks, scope);
                let span = p.span();
                match block.section {
                    Section::Brackets => {
                        p.expect(Tok::LBrack)?;
                        let (left, _) = p.generator()?;
                        p.expect(Tok::Comma)?;
                        let (right, rspan) = p.generator()?;
                        p.expect(Tok::RBrack)?;
                        p.expect(Tok::Eq)?;
                        let rhs = p.expr()?;
                        p.expect_end()?;
                        if left == right {
                            return err(ErrorKind::Syntax(format!("bracket of '{left}' with itself")), rspan);
                        }
                        if pres.brackets.iter().any(|b| {
                            (b.left == left && b.right == right) || (b.left == right && b.right == left)
                        }) {
                            return err(ErrorKind::DuplicateBracket(left, right), span);
                        }
                        pres.brackets.push(BracketDef { left, right, rhs, span });
                    }
                    Section::Macros => {
                        let (name, nspan) = p.ident()?;
                        if gen_set.contains(&name) || reserved(&name) {
                            return err(ErrorKind::Syntax(format!("macro name '{name}' is already in use")), nspan);
                        }
                        if macro_set.contains(&name) {
                            return err(ErrorKind::DuplicateDefinition(name), nspan);
                        }
                        p.expect(Tok::Eq)?;
                        let rhs = p.expr()?;
                        p.expect_end()?;
                        pres.macros.push(Definition { name: name.clone(), rhs, span });
                        macro_set.insert(name);
                    }
                    Section::Coproduct | Section::Counit | Section::Antipode => {
                        let (name, nspan) = p.generator()?;
                        p.expect(Tok::Eq)?;
                        let rhs = p.expr()?;
                        p.expect_end()?;
                        let list = match block.section {
                            Section::Coproduct => &mut pres.coproduct,
                            Section::Counit => &mut pres.counit,
                            _ => &mut pres.antipode,
                        };
                        if list.iter().any(|d| d.name == name) {
                            return err(ErrorKind::DuplicateDefinition(name), nspan);
                        }
                        list.push(Definition { name, rhs, span });
                    }
                    _ => unreachable!(),
                }
            }
            let (list, label) = match block.section {
                Section::Coproduct => (&pres.coproduct, "COPRODUCT"),
                Section::Counit => (&pres.counit, "COUNIT"),
                Section::Antipode => (&pres.antipode, "ANTIPODE"),
                _ => continue,
            };
            if let Some(missing) = pres.generators.iter().find(|g| !list.iter().any(|d| &d.name == *g)) {
                return err(
                    ErrorKind::MissingDefinition { section: label.to_string(), generator: missing.clone() },
                    block.header_span,
                );
            }
        }
        Ok(pres)
    }

    /// Canonical text form; `parse(serialize(p)) == p` up to spans.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ALGEBRA {}", self.name);
        let _ = writeln!(out, "\nGENERATORS\n  {}", self.generators.join(" "));
        if self.grading.iter().any(|&g| g != 0) {
            let _ = writeln!(out, "\nGRADING");
            let mut grades: Vec<i8> = self.grading.clone();
            grades.sort_unstable_by(|a, b| b.cmp(a));
            grades.dedup();
            for g in grades {
                let names: Vec<&str> = self
                    .generators
                    .iter()
                    .zip(&self.grading)
                    .filter(|(_, &h)| h == g)
                    .map(|(n, _)| n.as_str())
                    .collect();
                let _ = writeln!(out, "  {g:+}: {}", names.join(" "));
            }
        }
        if !self.series.is_empty() {
            let _ = writeln!(out, "\nSERIES\n  {}", self.series.join(" "));
        }
        if !self.center.is_empty() {
            let _ = writeln!(out, "\nCENTER\n  {}", self.center.join(" "));
        }
        if !self.macros.is_empty() {
            let _ = writeln!(out, "\nMACROS");
            for m in &self.macros {
                let _ = writeln!(out, "  {} = {}", m.name, m.rhs);
            }
        }
        if !self.brackets.is_empty() {
            let _ = writeln!(out, "\nBRACKETS");
            for b in &self.brackets {
                let _ = writeln!(out, "  [{}, {}] = {}", b.left, b.right, b.rhs);
            }
        }
        for (label, list) in [("COPRODUCT", &self.coproduct), ("COUNIT", &self.counit), ("ANTIPODE", &self.antipode)] {
            if !list.is_empty() {
                let _ = writeln!(out, "\n{label}");
                for d in list {
                    let _ = writeln!(out, "  {} = {}", d.name, d.rhs);
                }
            }
        }
        if let Some(id) = &self.identification {
            let _ = writeln!(out, "\nIDENTIFY {}", id.target);
            for e in &id.entries {
                let _ = writeln!(out, "  {} = {}", e.name, e.text);
            }
        }
        out
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn bracket_def(&self, a: &str, b: &str) -> Option<&BracketDef> {
        self.brackets.iter().find(|d| (d.left == a && d.right == b) || (d.left == b && d.right == a))
    }

    pub fn has_hopf_structure(&self) -> bool {
        !self.coproduct.is_empty() && !self.counit.is_empty() && !self.antipode.is_empty()
    }
}
