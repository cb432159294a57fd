//! Parser for link and graph documents.
//!
//! ```text
//! doc    := header word?
//! header := "colors" ":" INT+ NEWLINE | "graph" ":" ("(" INT "," INT ")")+ NEWLINE
//! word   := term*
//! term   := gen ("^" SINT)?
//! gen    := "a(" comp "," comp ")" | "t(" comp ("," comp)+ ")"
//! comp   := "(" INT "," INT ")"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::decide::bouquet_reduction;
use crate::hbraid::GeneratorLink;
use crate::scheme::{ComponentDecomposition, ComponentId, IndexSequence};

/// Largest number of letters a single `^k` may expand to.
pub const MAX_EXPONENT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnknownGenerator,
    ComponentOutOfRange,
    MalformedClasper,
    InvalidHeader,
}

impl ParseErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ParseErrorKind::Lexical => "lexical",
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::UnknownGenerator => "unknown-generator",
            ParseErrorKind::ComponentOutOfRange => "component-out-of-range",
            ParseErrorKind::MalformedClasper => "malformed-clasper",
            ParseErrorKind::InvalidHeader => "invalid-header",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A generator word over a decomposition, with the comments of the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDocument {
    pub ambient: ComponentDecomposition,
    pub word: Vec<GeneratorLink>,
    pub comments: Vec<String>,
}

/// A link document whose decomposition may come from graph component counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    /// `(vertices, edges)` per component when given in graph form.
    pub components: Option<Vec<(usize, usize)>>,
    pub link: LinkDocument,
}

enum Header {
    Colors(Vec<usize>),
    Graph(Vec<(usize, usize)>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    comments: Vec<String>,
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0, line: 1, col: 1, comments: Vec::new() }
    }

    fn here(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn err(&self, at: Pos, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { kind, line: at.line, column: at.col, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else if c & 0xC0 != 0x80 {
            self.col += 1;
        }
        Some(c)
    }

    fn comment(&mut self) {
        let start = self.pos + 1;
        while let Some(c) = self.peek() {
            if c == b'\n' {
                break;
            }
            self.bump();
        }
        let text = String::from_utf8_lossy(&self.src[start..self.pos]).trim().to_string();
        self.comments.push(text);
    }

    /// Skips blanks and comments; newlines too when `newlines` is set.
    fn skip(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            match c {
                b' ' | b'\t' | b'\r' => {
                    self.bump();
                }
                b'\n' if newlines => {
                    self.bump();
                }
                b'#' => self.comment(),
                _ => break,
            }
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(b'\n') => "end of line".into(),
            Some(_) => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap_or("");
                match rest.chars().next() {
                    Some(ch) => format!("'{ch}'"),
                    None => "invalid UTF-8".into(),
                }
            }
        }
    }

    fn expect(&mut self, want: u8, newlines: bool) -> Result<Pos, ParseError> {
        self.skip(newlines);
        let at = self.here();
        if self.peek() == Some(want) {
            self.bump();
            Ok(at)
        } else {
            let kind = self.unexpected_kind();
            Err(self.err(at, kind, format!("expected '{}', found {}", want as char, self.describe())))
        }
    }

    fn unexpected_kind(&self) -> ParseErrorKind {
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || b"()^,:-+#\n".contains(&c) => ParseErrorKind::Syntax,
            None => ParseErrorKind::Syntax,
            _ => ParseErrorKind::Lexical,
        }
    }

    fn ident(&mut self) -> (Pos, String) {
        let at = self.here();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        (at, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn uint(&mut self, newlines: bool) -> Result<(Pos, u64), ParseError> {
        self.skip(newlines);
        let at = self.here();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            let kind = self.unexpected_kind();
            return Err(self.err(at, kind, format!("expected an integer, found {}", self.describe())));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<u64>()
            .map(|v| (at, v))
            .map_err(|_| self.err(at, ParseErrorKind::Syntax, format!("integer {text} is too large")))
    }

    fn sint(&mut self) -> Result<(Pos, i64), ParseError> {
        self.skip(true);
        let at = self.here();
        let neg = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let (_, v) = self.uint(false)?;
        let v = i64::try_from(v).map_err(|_| self.err(at, ParseErrorKind::Syntax, "exponent is too large"))?;
        Ok((at, if neg { -v } else { v }))
    }

    fn header(&mut self) -> Result<Header, ParseError> {
        self.skip(true);
        let (at, name) = self.ident();
        if name.is_empty() {
            let kind = self.unexpected_kind();
            return Err(self.err(at, kind, format!("expected a 'colors:' header, found {}", self.describe())));
        }
        let header = match name.as_str() {
            "colors" => {
                self.expect(b':', false)?;
                let mut counts = Vec::new();
                loop {
                    self.skip(false);
                    match self.peek() {
                        Some(c) if c.is_ascii_digit() => {
                            let (p, v) = self.uint(false)?;
                            if v == 0 {
                                return Err(self.err(p, ParseErrorKind::InvalidHeader, "a color must have at least one strand"));
                            }
                            counts.push(v as usize);
                        }
                        _ => break,
                    }
                }
                if counts.is_empty() {
                    return Err(self.err(self.here(), ParseErrorKind::InvalidHeader, "the header lists no colors"));
                }
                Header::Colors(counts)
            }
            "graph" => {
                self.expect(b':', false)?;
                let mut comps = Vec::new();
                loop {
                    self.skip(false);
                    if self.peek() != Some(b'(') {
                        break;
                    }
                    self.bump();
                    let (_, v) = self.uint(false)?;
                    self.expect(b',', false)?;
                    let (_, e) = self.uint(false)?;
                    self.expect(b')', false)?;
                    comps.push((v as usize, e as usize));
                }
                if comps.is_empty() {
                    return Err(self.err(self.here(), ParseErrorKind::InvalidHeader, "the header lists no components"));
                }
                Header::Graph(comps)
            }
            _ => {
                return Err(self.err(at, ParseErrorKind::InvalidHeader, format!("unknown header '{name}'")));
            }
        };
        self.skip(false);
        match self.peek() {
            None | Some(b'\n') => Ok(header),
            _ => {
                let kind = self.unexpected_kind();
                Err(self.err(self.here(), kind, format!("expected end of header line, found {}", self.describe())))
            }
        }
    }

    fn component(&mut self, l: &ComponentDecomposition) -> Result<ComponentId, ParseError> {
        let at = self.expect(b'(', true)?;
        let (_, i) = self.uint(true)?;
        self.expect(b',', true)?;
        let (_, j) = self.uint(true)?;
        self.expect(b')', true)?;
        let c = ComponentId::new(i as usize, j as usize);
        if !l.contains(c) {
            return Err(self.err(at, ParseErrorKind::ComponentOutOfRange, format!("component {c} is not in {l}")));
        }
        Ok(c)
    }

    fn word(&mut self, l: &ComponentDecomposition) -> Result<Vec<GeneratorLink>, ParseError> {
        let mut word = Vec::new();
        loop {
            self.skip(true);
            let Some(c) = self.peek() else { break };
            if !c.is_ascii_alphabetic() {
                let kind = self.unexpected_kind();
                return Err(self.err(self.here(), kind, format!("expected a generator, found {}", self.describe())));
            }
            let (at, name) = self.ident();
            let g = match name.as_str() {
                "a" => {
                    self.expect(b'(', true)?;
                    let x = self.component(l)?;
                    self.expect(b',', true)?;
                    let y = self.component(l)?;
                    self.expect(b')', true)?;
                    if x == y {
                        return Err(self.err(at, ParseErrorKind::Syntax, format!("clasp of {x} with itself")));
                    }
                    GeneratorLink::clasp(x, y, 1).expect("distinct strands")
                }
                "t" => {
                    self.expect(b'(', true)?;
                    let mut entries = vec![self.component(l)?];
                    loop {
                        self.skip(true);
                        if self.peek() == Some(b',') {
                            self.bump();
                            entries.push(self.component(l)?);
                        } else {
                            break;
                        }
                    }
                    self.expect(b')', true)?;
                    if entries.len() < 2 {
                        return Err(self.err(at, ParseErrorKind::MalformedClasper, "a clasper needs at least two components"));
                    }
                    let seq = IndexSequence::new(entries)
                        .map_err(|e| self.err(at, ParseErrorKind::MalformedClasper, e.to_string()))?;
                    GeneratorLink::clasper(seq, 1).map_err(|e| self.err(at, ParseErrorKind::MalformedClasper, e.to_string()))?
                }
                _ => {
                    return Err(self.err(at, ParseErrorKind::UnknownGenerator, format!("unknown generator '{name}'")));
                }
            };
            self.skip(true);
            let mut exp = 1i64;
            if self.peek() == Some(b'^') {
                self.bump();
                let (p, e) = self.sint()?;
                if e.unsigned_abs() > MAX_EXPONENT {
                    return Err(self.err(p, ParseErrorKind::Syntax, format!("exponent {e} exceeds {MAX_EXPONENT}")));
                }
                exp = e;
            }
            let g = if exp < 0 { g.inverse() } else { g };
            word.extend(std::iter::repeat_n(g, exp.unsigned_abs() as usize));
        }
        Ok(word)
    }
}

fn parse_any(text: &str) -> Result<(Header, ComponentDecomposition, Vec<GeneratorLink>, Vec<String>), ParseError> {
    let mut p = Parser::new(text);
    let start = {
        p.skip(true);
        p.here()
    };
    let header = p.header()?;
    let ambient = match &header {
        Header::Colors(counts) => ComponentDecomposition::new(counts.clone()),
        Header::Graph(comps) => bouquet_reduction(comps),
    }
    .map_err(|e| p.err(start, ParseErrorKind::InvalidHeader, e.to_string()))?;
    let word = p.word(&ambient)?;
    Ok((header, ambient, word, p.comments))
}

pub fn parse_link(text: &str) -> Result<LinkDocument, ParseError> {
    let (header, ambient, word, comments) = parse_any(text)?;
    if let Header::Graph(_) = header {
        return Err(ParseError {
            kind: ParseErrorKind::InvalidHeader,
            line: 1,
            column: 1,
            message: "expected a 'colors:' header, found a graph header".into(),
        });
    }
    Ok(LinkDocument { ambient, word, comments })
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    let (header, ambient, word, comments) = parse_any(text)?;
    let components = match header {
        Header::Graph(c) => Some(c),
        Header::Colors(_) => None,
    };
    Ok(GraphDocument { components, link: LinkDocument { ambient, word, comments } })
}

impl fmt::Display for LinkDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::serialize_word(&self.ambient, &self.word))
    }
}
