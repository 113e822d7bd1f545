//! Turtle subset parser and deterministic serializer.
//!
//! Supported: `@prefix`, `@base`, `a`, predicate lists (`;`), object lists
//! (`,`), language-tagged and datatyped literals, and labelled blank nodes.
//! Collections `( )`, anonymous blank-node property lists `[ ]`, and
//! multiline literals are rejected with a positioned error rather than
//! skipped.

use std::collections::BTreeMap;

use super::{compact_iri, expand_qname, BlankNode, Graph, Iri, Literal, RdfError, Resource, Term, Triple};
use crate::vocab;

/// Parses a Turtle document into a graph. `base` seeds relative IRI
/// resolution and may be overridden by an `@base` directive.
pub fn parse_turtle(text: &str, base: Option<&Iri>) -> Result<Graph, RdfError> {
    let mut parser = Parser::new(text, base.cloned());
    parser.run()?;
    Ok(parser.graph)
}

/// Serializes a graph to Turtle with a fully deterministic layout: prefixes
/// sorted, subjects sorted (IRIs before blank nodes), predicates sorted
/// within each subject, objects sorted within each predicate. Equal graphs
/// produce byte-identical output.
pub fn serialize_turtle(graph: &Graph) -> String {
    let prefixes = graph.prefixes();
    let mut out = String::new();
    for (prefix, ns) in prefixes {
        out.push_str(&format!("@prefix {}: <{}> .\n", prefix, ns));
    }
    if !prefixes.is_empty() && !graph.is_empty() {
        out.push('\n');
    }

    let mut subjects: Vec<&Resource> = graph.subjects().collect();
    subjects.sort_by_key(|r| resource_sort_key(r));

    for (i, subject) in subjects.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let mut by_predicate: BTreeMap<&Iri, Vec<&Term>> = BTreeMap::new();
        for t in graph.subject_triples(subject) {
            by_predicate.entry(&t.predicate).or_default().push(&t.object);
        }
        out.push_str(&render_resource(prefixes, subject));
        let n_preds = by_predicate.len();
        for (pi, (predicate, mut objects)) in by_predicate.into_iter().enumerate() {
            objects.sort_by_key(|o| term_sort_key(o));
            if pi == 0 {
                out.push(' ');
            } else {
                out.push_str("    ");
            }
            out.push_str(&render_predicate(prefixes, predicate));
            out.push(' ');
            for (oi, object) in objects.iter().enumerate() {
                if oi > 0 {
                    out.push_str(" , ");
                }
                out.push_str(&render_term(prefixes, object));
            }
            if pi + 1 == n_preds {
                out.push_str(" .\n");
            } else {
                out.push_str(" ;\n");
            }
        }
    }
    out
}

fn resource_sort_key(r: &Resource) -> (u8, String) {
    match r {
        Resource::Iri(i) => (0, i.as_str().to_string()),
        Resource::Blank(b) => (1, b.0.clone()),
    }
}

fn term_sort_key(t: &Term) -> (u8, String, String, String) {
    match t {
        Term::Iri(i) => (0, i.as_str().to_string(), String::new(), String::new()),
        Term::Blank(b) => (1, b.0.clone(), String::new(), String::new()),
        Term::Literal(l) => (
            2,
            l.lexical.clone(),
            l.language.clone().unwrap_or_default(),
            l.datatype.as_str().to_string(),
        ),
    }
}

fn render_resource(prefixes: &BTreeMap<String, Iri>, r: &Resource) -> String {
    match r {
        Resource::Iri(i) => render_iri(prefixes, i),
        Resource::Blank(b) => format!("_:{}", b.0),
    }
}

fn render_predicate(prefixes: &BTreeMap<String, Iri>, p: &Iri) -> String {
    if p.as_str() == vocab::RDF_TYPE {
        "a".to_string()
    } else {
        render_iri(prefixes, p)
    }
}

fn render_iri(prefixes: &BTreeMap<String, Iri>, i: &Iri) -> String {
    compact_iri(prefixes, i).unwrap_or_else(|| format!("<{}>", i))
}

fn render_term(prefixes: &BTreeMap<String, Iri>, t: &Term) -> String {
    match t {
        Term::Iri(i) => render_iri(prefixes, i),
        Term::Blank(b) => format!("_:{}", b.0),
        Term::Literal(l) => {
            let mut s = format!("\"{}\"", escape_literal(&l.lexical));
            if let Some(tag) = &l.language {
                s.push('@');
                s.push_str(tag);
            } else if l.datatype.as_str() != vocab::XSD_STRING {
                s.push_str("^^");
                s.push_str(&render_iri(prefixes, &l.datatype));
            }
            s
        }
    }
}

fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    base: Option<Iri>,
    graph: Graph,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    PrefixDirective,
    BaseDirective,
    IriRef(String),
    PName(String),
    BlankLabel(String),
    LiteralTok {
        lexical: String,
        lang: Option<String>,
        datatype: Option<Box<Token>>,
    },
    A,
    Semicolon,
    Comma,
    Dot,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::PrefixDirective => "@prefix".into(),
            Token::BaseDirective => "@base".into(),
            Token::IriRef(s) => format!("<{}>", s),
            Token::PName(s) => s.clone(),
            Token::BlankLabel(s) => format!("_:{}", s),
            Token::LiteralTok { lexical, .. } => format!("\"{}\"", lexical),
            Token::A => "a".into(),
            Token::Semicolon => ";".into(),
            Token::Comma => ",".into(),
            Token::Dot => ".".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

impl Parser {
    fn new(text: &str, base: Option<Iri>) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            base,
            graph: Graph::new(),
        }
    }

    fn run(&mut self) -> Result<(), RdfError> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            let (token, line, col) = self.next_token()?;
            match token {
                Token::PrefixDirective => self.parse_prefix()?,
                Token::BaseDirective => self.parse_base()?,
                Token::Eof => return Ok(()),
                other => self.parse_triples(other, line, col)?,
            }
        }
    }

    fn parse_prefix(&mut self) -> Result<(), RdfError> {
        let (line, col) = (self.line, self.col);
        self.skip_ws();
        let prefix = self.read_prefix_name(line, col)?;
        let (tok, l, c) = self.next_token()?;
        let ns = match tok {
            Token::IriRef(iri) => self.resolve_iri(&iri, l, c)?,
            other => return Err(self.err(l, c, &other, "expected namespace IRI")),
        };
        self.expect_dot()?;
        self.graph.declare_prefix(prefix, ns);
        Ok(())
    }

    fn parse_base(&mut self) -> Result<(), RdfError> {
        let (tok, l, c) = self.next_token()?;
        match tok {
            Token::IriRef(iri) => {
                let resolved = self.resolve_iri(&iri, l, c)?;
                self.base = Some(resolved);
            }
            other => return Err(self.err(l, c, &other, "expected base IRI")),
        }
        self.expect_dot()?;
        Ok(())
    }

    /// Reads the `name:` part of a @prefix directive (possibly empty name).
    fn read_prefix_name(&mut self, line: usize, col: usize) -> Result<String, RdfError> {
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                self.advance();
                return Ok(name);
            }
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' {
                name.push(c);
                self.advance();
            } else {
                break;
            }
        }
        Err(RdfError::syntax(line, col, name, "expected prefix name ending in ':'"))
    }

    fn parse_triples(&mut self, first: Token, line: usize, col: usize) -> Result<(), RdfError> {
        let subject = self.token_to_resource(first, line, col)?;
        loop {
            let (ptok, pl, pc) = self.next_token()?;
            let predicate = match ptok {
                Token::A => Iri::new(vocab::RDF_TYPE).unwrap(),
                Token::IriRef(iri) => self.resolve_iri(&iri, pl, pc)?,
                Token::PName(q) => self.expand(&q, pl, pc)?,
                other => return Err(self.err(pl, pc, &other, "expected predicate")),
            };
            // Object list.
            loop {
                let (otok, ol, oc) = self.next_token()?;
                let object = self.token_to_term(otok, ol, oc)?;
                self.graph
                    .insert(Triple::new(subject.clone(), predicate.clone(), object));
                let (sep, sl, sc) = self.next_token()?;
                match sep {
                    Token::Comma => continue,
                    Token::Semicolon => break,
                    Token::Dot => return Ok(()),
                    other => {
                        return Err(self.err(sl, sc, &other, "expected ',', ';' or '.'"))
                    }
                }
            }
            // After ';' a trailing '.' is permitted.
            self.skip_ws();
            if self.peek() == Some('.') {
                self.advance();
                return Ok(());
            }
        }
    }

    fn token_to_resource(&mut self, tok: Token, line: usize, col: usize) -> Result<Resource, RdfError> {
        match tok {
            Token::IriRef(iri) => Ok(Resource::Iri(self.resolve_iri(&iri, line, col)?)),
            Token::PName(q) => Ok(Resource::Iri(self.expand(&q, line, col)?)),
            Token::BlankLabel(b) => Ok(Resource::Blank(BlankNode(b))),
            other => Err(self.err(line, col, &other, "expected subject (IRI or blank node)")),
        }
    }

    fn token_to_term(&mut self, tok: Token, line: usize, col: usize) -> Result<Term, RdfError> {
        match tok {
            Token::IriRef(iri) => Ok(Term::Iri(self.resolve_iri(&iri, line, col)?)),
            Token::PName(q) => Ok(Term::Iri(self.expand(&q, line, col)?)),
            Token::BlankLabel(b) => Ok(Term::Blank(BlankNode(b))),
            Token::LiteralTok {
                lexical,
                lang,
                datatype,
            } => {
                if let Some(tag) = lang {
                    Ok(Term::Literal(Literal::lang(lexical, tag)))
                } else if let Some(dt) = datatype {
                    let dt_iri = match *dt {
                        Token::IriRef(iri) => self.resolve_iri(&iri, line, col)?,
                        Token::PName(q) => self.expand(&q, line, col)?,
                        other => {
                            return Err(self.err(line, col, &other, "expected datatype IRI"))
                        }
                    };
                    Ok(Term::Literal(Literal::typed(lexical, dt_iri)))
                } else {
                    Ok(Term::Literal(Literal::plain(lexical)))
                }
            }
            other => Err(self.err(line, col, &other, "expected object")),
        }
    }

    fn expand(&self, qname: &str, line: usize, col: usize) -> Result<Iri, RdfError> {
        expand_qname(self.graph.prefixes(), qname).map_err(|e| match e {
            RdfError::UnresolvedPrefix(p) => RdfError::syntax(
                line,
                col,
                qname,
                format!("unresolved prefix '{}'", p),
            ),
            other => other,
        })
    }

    /// Resolves a (possibly relative) IRI reference against the base.
    fn resolve_iri(&self, iri: &str, line: usize, col: usize) -> Result<Iri, RdfError> {
        let has_scheme = iri
            .find(':')
            .map(|i| !iri[..i].contains('/') && !iri[..i].contains('#'))
            .unwrap_or(false);
        if has_scheme {
            return Iri::new(iri)
                .map_err(|_| RdfError::syntax(line, col, iri, "invalid IRI"));
        }
        let base = self.base.as_ref().ok_or_else(|| {
            RdfError::syntax(line, col, iri, "relative IRI without a base")
        })?;
        let base_str = base.as_str();
        let joined = if let Some(rest) = iri.strip_prefix('#') {
            let stem = base_str.split('#').next().unwrap_or(base_str);
            format!("{}#{}", stem, rest)
        } else if iri.is_empty() {
            base_str.to_string()
        } else {
            let stem = base_str.rsplit_once('/').map(|(s, _)| s).unwrap_or(base_str);
            format!("{}/{}", stem, iri)
        };
        Iri::new(joined).map_err(|_| RdfError::syntax(line, col, iri, "invalid IRI after base resolution"))
    }

    fn expect_dot(&mut self) -> Result<(), RdfError> {
        let (tok, l, c) = self.next_token()?;
        if tok == Token::Dot {
            Ok(())
        } else {
            Err(self.err(l, c, &tok, "expected '.'"))
        }
    }

    fn err(&self, line: usize, col: usize, tok: &Token, message: &str) -> RdfError {
        RdfError::syntax(line, col, tok.describe(), message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn advance(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.advance();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.advance();
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<(Token, usize, usize), RdfError> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let c = match self.peek() {
            Some(c) => c,
            None => return Ok((Token::Eof, line, col)),
        };
        let token = match c {
            '<' => self.lex_iriref(line, col)?,
            '"' => self.lex_literal(line, col)?,
            '\'' => {
                return Err(RdfError::syntax(
                    line,
                    col,
                    "'",
                    "single-quoted literals are not supported",
                ))
            }
            '(' => {
                return Err(RdfError::syntax(
                    line,
                    col,
                    "(",
                    "collections are not supported",
                ))
            }
            '[' => {
                return Err(RdfError::syntax(
                    line,
                    col,
                    "[",
                    "anonymous blank-node property lists are not supported",
                ))
            }
            ';' => {
                self.advance();
                Token::Semicolon
            }
            ',' => {
                self.advance();
                Token::Comma
            }
            '.' => {
                self.advance();
                Token::Dot
            }
            '@' => self.lex_at_word(line, col)?,
            '_' if self.peek_at(1) == Some(':') => self.lex_blank(line, col)?,
            c if c.is_alphanumeric() || c == ':' || c == '_' => self.lex_pname(line, col)?,
            other => {
                return Err(RdfError::syntax(
                    line,
                    col,
                    other.to_string(),
                    "unexpected character",
                ))
            }
        };
        Ok((token, line, col))
    }

    fn lex_iriref(&mut self, line: usize, col: usize) -> Result<Token, RdfError> {
        self.advance(); // consume '<'
        let mut iri = String::new();
        loop {
            match self.advance() {
                Some('>') => return Ok(Token::IriRef(iri)),
                Some(c) if c == '\n' => {
                    return Err(RdfError::syntax(line, col, iri, "newline inside IRI"))
                }
                Some(c) => iri.push(c),
                None => {
                    return Err(RdfError::syntax(line, col, iri, "unterminated IRI"))
                }
            }
        }
    }

    fn lex_literal(&mut self, line: usize, col: usize) -> Result<Token, RdfError> {
        self.advance(); // consume opening '"'
        if self.peek() == Some('"') && self.peek_at(1) == Some('"') {
            return Err(RdfError::syntax(
                line,
                col,
                "\"\"\"",
                "multiline literals are not supported",
            ));
        }
        let mut lexical = String::new();
        loop {
            match self.advance() {
                Some('"') => break,
                Some('\\') => {
                    let esc = self.advance().ok_or_else(|| {
                        RdfError::syntax(line, col, &lexical, "unterminated escape")
                    })?;
                    match esc {
                        't' => lexical.push('\t'),
                        'n' => lexical.push('\n'),
                        'r' => lexical.push('\r'),
                        '"' => lexical.push('"'),
                        '\\' => lexical.push('\\'),
                        'u' | 'U' => {
                            let n = if esc == 'u' { 4 } else { 8 };
                            let mut hex = String::new();
                            for _ in 0..n {
                                hex.push(self.advance().ok_or_else(|| {
                                    RdfError::syntax(line, col, &hex, "truncated unicode escape")
                                })?);
                            }
                            let code = u32::from_str_radix(&hex, 16).map_err(|_| {
                                RdfError::syntax(line, col, &hex, "invalid unicode escape")
                            })?;
                            lexical.push(char::from_u32(code).ok_or_else(|| {
                                RdfError::syntax(line, col, &hex, "invalid unicode code point")
                            })?);
                        }
                        other => {
                            return Err(RdfError::syntax(
                                line,
                                col,
                                format!("\\{}", other),
                                "unknown escape sequence",
                            ))
                        }
                    }
                }
                Some('\n') => {
                    return Err(RdfError::syntax(
                        line,
                        col,
                        lexical,
                        "newline inside literal (multiline literals are not supported)",
                    ))
                }
                Some(c) => lexical.push(c),
                None => {
                    return Err(RdfError::syntax(line, col, lexical, "unterminated literal"))
                }
            }
        }
        // Optional language tag or datatype.
        if self.peek() == Some('@') {
            self.advance();
            let mut tag = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    tag.push(c);
                    self.advance();
                } else {
                    break;
                }
            }
            if tag.is_empty() {
                return Err(RdfError::syntax(line, col, "@", "empty language tag"));
            }
            return Ok(Token::LiteralTok {
                lexical,
                lang: Some(tag),
                datatype: None,
            });
        }
        if self.peek() == Some('^') && self.peek_at(1) == Some('^') {
            self.advance();
            self.advance();
            let (dt, dl, dc) = self.next_token()?;
            match dt {
                Token::IriRef(_) | Token::PName(_) => {
                    return Ok(Token::LiteralTok {
                        lexical,
                        lang: None,
                        datatype: Some(Box::new(dt)),
                    })
                }
                other => return Err(self.err(dl, dc, &other, "expected datatype IRI")),
            }
        }
        Ok(Token::LiteralTok {
            lexical,
            lang: None,
            datatype: None,
        })
    }

    fn lex_at_word(&mut self, line: usize, col: usize) -> Result<Token, RdfError> {
        self.advance(); // consume '@'
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                word.push(c);
                self.advance();
            } else {
                break;
            }
        }
        match word.as_str() {
            "prefix" => Ok(Token::PrefixDirective),
            "base" => Ok(Token::BaseDirective),
            other => Err(RdfError::syntax(
                line,
                col,
                format!("@{}", other),
                "unknown directive",
            )),
        }
    }

    fn lex_blank(&mut self, line: usize, col: usize) -> Result<Token, RdfError> {
        self.advance(); // '_'
        self.advance(); // ':'
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' {
                label.push(c);
                self.advance();
            } else if c == '.' {
                // Dots may appear inside a label but never terminate it.
                match self.peek_at(1) {
                    Some(n) if n.is_alphanumeric() || n == '_' || n == '-' => {
                        label.push(c);
                        self.advance();
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        if label.is_empty() {
            return Err(RdfError::syntax(line, col, "_:", "empty blank node label"));
        }
        Ok(Token::BlankLabel(label))
    }

    /// Lexes a prefixed name or the keyword `a`. Bare words other than `a`
    /// (booleans, numbers, SPARQL-style keywords) are rejected.
    fn lex_pname(&mut self, line: usize, col: usize) -> Result<Token, RdfError> {
        let mut word = String::new();
        let mut has_colon = false;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '%' {
                word.push(c);
                self.advance();
            } else if c == ':' && !has_colon {
                has_colon = true;
                word.push(c);
                self.advance();
            } else if c == '.' && has_colon {
                match self.peek_at(1) {
                    Some(n) if n.is_alphanumeric() || n == '_' || n == '-' => {
                        word.push(c);
                        self.advance();
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        if word == "a" {
            return Ok(Token::A);
        }
        if has_colon {
            return Ok(Token::PName(word));
        }
        Err(RdfError::syntax(
            line,
            col,
            word,
            "expected a prefixed name, IRI, or 'a'",
        ))
    }
}
