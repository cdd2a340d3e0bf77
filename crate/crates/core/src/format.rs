//! Line format for curves.
//!
//! ```text
//! #version 1
//! #depth 2
//! L N g0 g1
//! R S g1 @b2
//! T N g0 g3 g1
//! E N g0 | g1 g2
//! ```
//!
//! `L` loop, `R` short ray (needs `@b<k>`), `T` truncated long-ray prefix,
//! `E` eventually periodic long ray (preamble `|` period). Other `#` lines are
//! comments and survive a round trip.

use crate::equator::{make_model, EquatorModel};
use crate::error::{Error, Result};
use crate::word::{CrossingWord, Hemisphere, Terminal};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicSpec {
    pub start: Hemisphere,
    pub preamble: Vec<u32>,
    pub period: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Comment(String),
    Word(CrossingWord),
    Periodic(PeriodicSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFile {
    pub version: Option<u32>,
    pub model: EquatorModel,
    pub entries: Vec<Entry>,
}

impl CorpusFile {
    pub fn new(model: EquatorModel) -> Self {
        CorpusFile {
            version: Some(FORMAT_VERSION),
            model,
            entries: Vec::new(),
        }
    }

    pub fn words(&self) -> impl Iterator<Item = &CrossingWord> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Word(w) => Some(w),
            _ => None,
        })
    }

    pub fn periodic(&self) -> impl Iterator<Item = &PeriodicSpec> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Periodic(p) => Some(p),
            _ => None,
        })
    }
}

pub fn format_word(w: &CrossingWord) -> String {
    let mut s = String::new();
    s.push(match w.terminal {
        Terminal::Loop => 'L',
        Terminal::ShortRay(_) => 'R',
        Terminal::Truncated => 'T',
    });
    s.push(' ');
    s.push(w.start.letter());
    for g in &w.gaps {
        s.push_str(" g");
        s.push_str(&g.to_string());
    }
    if let Terminal::ShortRay(b) = w.terminal {
        s.push_str(" @b");
        s.push_str(&b.to_string());
    }
    s
}

pub fn format_periodic(p: &PeriodicSpec) -> String {
    let mut s = format!("E {}", p.start.letter());
    for g in &p.preamble {
        s.push_str(&format!(" g{g}"));
    }
    s.push_str(" |");
    for g in &p.period {
        s.push_str(&format!(" g{g}"));
    }
    s
}

pub fn serialize(file: &CorpusFile) -> String {
    let mut out = String::new();
    if let Some(v) = file.version {
        out.push_str(&format!("#version {v}\n"));
    }
    out.push_str(&format!("#depth {}\n", file.model.depth()));
    for e in &file.entries {
        match e {
            Entry::Comment(c) => out.push_str(c),
            Entry::Word(w) => out.push_str(&format_word(w)),
            Entry::Periodic(p) => out.push_str(&format_periodic(p)),
        }
        out.push('\n');
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_index(tok: &str, prefix: &str, line: usize, col: usize) -> Result<u32> {
    tok.strip_prefix(prefix)
        .and_then(|r| {
            if r.is_empty() || (r.len() > 1 && r.starts_with('0')) {
                None
            } else {
                r.parse::<u32>().ok()
            }
        })
        .ok_or_else(|| perr(line, col, format!("expected {prefix}<index>, found `{tok}`")))
}

fn parse_hemisphere(tok: Option<&(usize, &str)>, line: usize) -> Result<Hemisphere> {
    match tok {
        Some((_, "N")) => Ok(Hemisphere::North),
        Some((_, "S")) => Ok(Hemisphere::South),
        Some((c, t)) => Err(perr(line, *c, format!("expected N or S, found `{t}`"))),
        None => Err(perr(line, 1, "missing hemisphere")),
    }
}

/// Parses one curve line (no header) against `model`. Ranges are checked.
pub fn parse_word_line(text: &str, model: EquatorModel, line: usize) -> Result<CrossingWord> {
    let toks = tokens(text);
    let (kcol, kind) = *toks.first().ok_or_else(|| perr(line, 1, "empty line"))?;
    let start = parse_hemisphere(toks.get(1), line)?;
    let mut gaps = Vec::new();
    let mut block = None;
    for &(col, t) in &toks[2..] {
        if block.is_some() {
            return Err(perr(line, col, "tokens after block terminal"));
        }
        if t.starts_with('@') {
            let b = parse_index(t, "@b", line, col)?;
            if b >= model.block_count() {
                return Err(perr(line, col, format!("no block b{b} at depth {}", model.depth())));
            }
            block = Some(b);
        } else {
            let g = parse_index(t, "g", line, col)?;
            if g > model.last_gap() {
                return Err(perr(
                    line,
                    col,
                    format!("gap g{g} out of range at depth {}", model.depth()),
                ));
            }
            gaps.push(g);
        }
    }
    let terminal = match (kind, block) {
        ("L", None) => Terminal::Loop,
        ("T", None) => Terminal::Truncated,
        ("R", Some(b)) => Terminal::ShortRay(b),
        ("R", None) => return Err(perr(line, kcol, "short ray needs an @b<k> terminal")),
        ("L" | "T", Some(_)) => return Err(perr(line, kcol, "only R lines take a block terminal")),
        (k, _) => return Err(perr(line, kcol, format!("unknown curve kind `{k}`"))),
    };
    Ok(CrossingWord::new(model, start, gaps, terminal))
}

fn parse_periodic_line(text: &str, model: EquatorModel, line: usize) -> Result<PeriodicSpec> {
    let toks = tokens(text);
    let start = parse_hemisphere(toks.get(1), line)?;
    let mut preamble = Vec::new();
    let mut period = Vec::new();
    let mut seen_bar = false;
    for &(col, t) in &toks[2..] {
        if t == "|" {
            if seen_bar {
                return Err(perr(line, col, "second `|`"));
            }
            seen_bar = true;
            continue;
        }
        let g = parse_index(t, "g", line, col)?;
        if g > model.last_gap() {
            return Err(perr(line, col, format!("gap g{g} out of range")));
        }
        if seen_bar {
            period.push(g);
        } else {
            preamble.push(g);
        }
    }
    if !seen_bar || period.is_empty() {
        return Err(perr(line, 1, "periodic ray needs a non-empty period after `|`"));
    }
    Ok(PeriodicSpec {
        start,
        preamble,
        period,
    })
}

/// Parses a corpus. The `#depth` header is required before any curve line.
pub fn parse(text: &str) -> Result<CorpusFile> {
    let mut version = None;
    let mut model = None;
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        if let Some(rest) = raw.strip_prefix("#depth") {
            if model.is_some() {
                return Err(perr(line, 1, "duplicate #depth header"));
            }
            let d: u32 = rest.trim().parse().map_err(|_| perr(line, 8, "bad depth value"))?;
            model = Some(make_model(d)?);
            continue;
        }
        if let Some(rest) = raw.strip_prefix("#version") {
            if model.is_some() || version.is_some() {
                return Err(perr(line, 1, "#version must come first"));
            }
            let v: u32 = rest.trim().parse().map_err(|_| perr(line, 10, "bad version value"))?;
            if v != FORMAT_VERSION {
                return Err(perr(line, 10, format!("unsupported version {v}")));
            }
            version = Some(v);
            continue;
        }
        if raw.starts_with('#') || raw.trim().is_empty() {
            if model.is_some() {
                entries.push(Entry::Comment(raw.to_string()));
            }
            continue;
        }
        let m = model.ok_or_else(|| perr(line, 1, "curve before #depth header"))?;
        if raw.trim_start().starts_with('E') {
            entries.push(Entry::Periodic(parse_periodic_line(raw, m, line)?));
        } else {
            entries.push(Entry::Word(parse_word_line(raw, m, line)?));
        }
    }
    let model = model.ok_or_else(|| perr(1, 1, "missing #depth header"))?;
    Ok(CorpusFile {
        version,
        model,
        entries,
    })
}

/// Curves and generators read from a corpus, after validation.
#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub model: EquatorModel,
    pub curves: Vec<crate::word::Curve>,
    pub generators: Vec<PeriodicSpec>,
    pub warnings: Vec<String>,
}

/// Parses and canonicalizes a corpus. Words with bigons are tightened and a
/// warning names the line; non-essential or non-simple entries are errors
/// that carry the line and the offending text.
pub fn load(text: &str) -> Result<LoadedCorpus> {
    use crate::word::{tighten, validate};
    let file = parse(text)?;
    let mut curves = Vec::new();
    let mut generators = Vec::new();
    let mut warnings = Vec::new();
    // Line numbers are recovered by matching entries to non-header lines.
    let body_lines: Vec<usize> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with("#depth") && !l.starts_with("#version"))
        .map(|(i, _)| i + 1)
        .collect();
    let mut at = 0usize;
    let skip_preamble = text
        .lines()
        .take_while(|l| !l.starts_with("#depth"))
        .filter(|l| !l.starts_with("#version"))
        .count();
    at += skip_preamble;
    for e in &file.entries {
        let line = body_lines.get(at).copied().unwrap_or(0);
        at += 1;
        match e {
            Entry::Comment(_) => {}
            Entry::Periodic(p) => generators.push(p.clone()),
            Entry::Word(w) => {
                let shown = format_word(w);
                let wrap = |err: Error| perr(line, 1, format!("`{shown}`: {err}"));
                let c = tighten(&validate(w.clone()).map_err(wrap)?).map_err(wrap)?;
                if !c.is_canonical() {
                    return Err(wrap(Error::NotSimple));
                }
                if c.word() != w {
                    warnings.push(format!(
                        "line {line}: `{shown}` tightened to `{}`",
                        format_word(c.word())
                    ));
                }
                curves.push(c);
            }
        }
    }
    Ok(LoadedCorpus {
        model: file.model,
        curves,
        generators,
        warnings,
    })
}
