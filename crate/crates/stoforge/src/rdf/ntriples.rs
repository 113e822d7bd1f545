//! N-Triples parser: one triple per line, full IRIs, document-scoped blank
//! node labels.

use super::{BlankNode, Graph, Iri, Literal, RdfError, Resource, Term, Triple};

/// Parses an N-Triples document. Duplicate lines collapse under set
/// semantics; errors carry the offending line number.
pub fn parse_ntriples(text: &str) -> Result<Graph, RdfError> {
    let mut graph = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cursor = Cursor {
            chars: line.chars().collect(),
            pos: 0,
            line: line_no,
        };
        let subject = match cursor.read_node()? {
            Term::Iri(i) => Resource::Iri(i),
            Term::Blank(b) => Resource::Blank(b),
            Term::Literal(_) => {
                return Err(RdfError::syntax(
                    line_no,
                    1,
                    line,
                    "literal in subject position",
                ))
            }
        };
        cursor.skip_ws();
        let predicate = match cursor.read_node()? {
            Term::Iri(i) => i,
            _ => {
                return Err(RdfError::syntax(
                    line_no,
                    cursor.pos + 1,
                    line,
                    "predicate must be an IRI",
                ))
            }
        };
        cursor.skip_ws();
        let object = cursor.read_node()?;
        cursor.skip_ws();
        if cursor.next() != Some('.') {
            return Err(RdfError::syntax(
                line_no,
                cursor.pos + 1,
                line,
                "expected terminating '.'",
            ));
        }
        cursor.skip_ws();
        if cursor.peek().is_some() {
            return Err(RdfError::syntax(
                line_no,
                cursor.pos + 1,
                line,
                "trailing content after '.'",
            ));
        }
        graph.insert(Triple::new(subject, predicate, object));
    }
    Ok(graph)
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn read_node(&mut self) -> Result<Term, RdfError> {
        match self.peek() {
            Some('<') => {
                self.next();
                let mut iri = String::new();
                loop {
                    match self.next() {
                        Some('>') => break,
                        Some(c) => iri.push(c),
                        None => {
                            return Err(RdfError::syntax(
                                self.line,
                                self.pos,
                                iri,
                                "unterminated IRI",
                            ))
                        }
                    }
                }
                Ok(Term::Iri(Iri::new(&iri).map_err(|_| {
                    RdfError::syntax(self.line, self.pos, &iri, "invalid IRI")
                })?))
            }
            Some('_') => {
                self.next();
                if self.next() != Some(':') {
                    return Err(RdfError::syntax(
                        self.line,
                        self.pos,
                        "_",
                        "expected ':' after '_'",
                    ));
                }
                let mut label = String::new();
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '-')
                {
                    label.push(self.next().unwrap());
                }
                if label.is_empty() {
                    return Err(RdfError::syntax(
                        self.line,
                        self.pos,
                        "_:",
                        "empty blank node label",
                    ));
                }
                Ok(Term::Blank(BlankNode(label)))
            }
            Some('"') => {
                self.next();
                let mut lexical = String::new();
                loop {
                    match self.next() {
                        Some('"') => break,
                        Some('\\') => match self.next() {
                            Some('t') => lexical.push('\t'),
                            Some('n') => lexical.push('\n'),
                            Some('r') => lexical.push('\r'),
                            Some('"') => lexical.push('"'),
                            Some('\\') => lexical.push('\\'),
                            Some('u') | Some('U') => {
                                return Err(RdfError::syntax(
                                    self.line,
                                    self.pos,
                                    &lexical,
                                    "unicode escapes are not supported in this subset",
                                ))
                            }
                            other => {
                                return Err(RdfError::syntax(
                                    self.line,
                                    self.pos,
                                    format!("{other:?}"),
                                    "unknown escape",
                                ))
                            }
                        },
                        Some(c) => lexical.push(c),
                        None => {
                            return Err(RdfError::syntax(
                                self.line,
                                self.pos,
                                lexical,
                                "unterminated literal",
                            ))
                        }
                    }
                }
                if self.peek() == Some('@') {
                    self.next();
                    let mut tag = String::new();
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                        tag.push(self.next().unwrap());
                    }
                    return Ok(Term::Literal(Literal::lang(lexical, tag)));
                }
                if self.peek() == Some('^') {
                    self.next();
                    if self.next() != Some('^') || self.peek() != Some('<') {
                        return Err(RdfError::syntax(
                            self.line,
                            self.pos,
                            "^",
                            "expected '^^<datatype>'",
                        ));
                    }
                    match self.read_node()? {
                        Term::Iri(dt) => return Ok(Term::Literal(Literal::typed(lexical, dt))),
                        _ => unreachable!("read_node on '<' yields an IRI"),
                    }
                }
                Ok(Term::Literal(Literal::plain(lexical)))
            }
            other => Err(RdfError::syntax(
                self.line,
                self.pos + 1,
                other.map(String::from).unwrap_or_default(),
                "expected IRI, blank node, or literal",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_one_triple() {
        let g = parse_ntriples("<urn:s> <urn:p> <urn:o> .\n").unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn repeated_line_collapses() {
        let doc = "<urn:s> <urn:p> <urn:o> .\n<urn:s> <urn:p> <urn:o> .\n";
        assert_eq!(parse_ntriples(doc).unwrap().len(), 1);
    }

    #[test]
    fn distinct_lines_match_line_set_count() {
        let doc = "<urn:a> <urn:p> <urn:b> .\n<urn:b> <urn:p> <urn:c> .\n\
                   <urn:a> <urn:p> <urn:b> .\n<urn:c> <urn:p> \"x\"@en .\n";
        let distinct: std::collections::BTreeSet<&str> =
            doc.lines().filter(|l| !l.trim().is_empty()).collect();
        assert_eq!(parse_ntriples(doc).unwrap().len(), distinct.len());
    }

    #[test]
    fn error_carries_line_number() {
        let doc = "<urn:s> <urn:p> <urn:o> .\n<urn:s> <urn:p> .\n";
        match parse_ntriples(doc).unwrap_err() {
            RdfError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected: {other:?}"),
        }
    }
}
