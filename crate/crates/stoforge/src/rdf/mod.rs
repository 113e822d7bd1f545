//! RDF substrate: terms, triples, and an indexed in-memory graph.
//!
//! Graphs are mutable while a single owner builds them and are treated as
//! frozen afterwards; all analysis stages take `&Graph` and never mutate.

pub mod ntriples;
pub mod turtle;

pub use ntriples::parse_ntriples;
pub use turtle::{parse_turtle, serialize_turtle};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vocab;

/// Errors raised by the RDF layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RdfError {
    #[error("{line}:{col}: syntax error near '{token}': {message}")]
    Syntax {
        line: usize,
        col: usize,
        token: String,
        message: String,
    },
    #[error("unresolved prefix '{0}'")]
    UnresolvedPrefix(String),
    #[error("invalid IRI '{0}'")]
    InvalidIri(String),
}

impl RdfError {
    pub fn syntax(line: usize, col: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        RdfError::Syntax {
            line,
            col,
            token: token.into(),
            message: message.into(),
        }
    }
}

/// An absolute IRI. Equality is exact string equality; the only normalization
/// applied is the syntactic validation at construction time.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Iri(String);

impl Iri {
    /// Validates and wraps an absolute IRI: non-empty, has a scheme
    /// separator, and contains no whitespace.
    pub fn new(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if value.is_empty()
            || !value.contains(':')
            || value.chars().any(|c| c.is_whitespace() || c == '<' || c == '>')
        {
            return Err(RdfError::InvalidIri(value));
        }
        Ok(Iri(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A blank node label, scoped to the document it was parsed from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlankNode(pub String);

/// An RDF literal. The lexical form is preserved byte-exactly from input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Iri,
    pub language: Option<String>,
}

impl Literal {
    /// A plain literal with the default string datatype.
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::new(vocab::XSD_STRING).unwrap(),
            language: None,
        }
    }

    /// A language-tagged literal; the datatype is forced to rdf:langString.
    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri::new(vocab::RDF_LANG_STRING).unwrap(),
            language: Some(tag.into()),
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }
}

/// A subject or object position that names a node (IRI or blank node).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Resource {
    Iri(Iri),
    Blank(BlankNode),
}

impl Resource {
    pub fn iri(&self) -> Option<&Iri> {
        match self {
            Resource::Iri(i) => Some(i),
            Resource::Blank(_) => None,
        }
    }
}

impl From<Iri> for Resource {
    fn from(i: Iri) -> Self {
        Resource::Iri(i)
    }
}

/// An object position: node or literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_resource(&self) -> Option<Resource> {
        match self {
            Term::Iri(i) => Some(Resource::Iri(i.clone())),
            Term::Blank(b) => Some(Resource::Blank(b.clone())),
            Term::Literal(_) => None,
        }
    }
}

impl From<Resource> for Term {
    fn from(r: Resource) -> Self {
        match r {
            Resource::Iri(i) => Term::Iri(i),
            Resource::Blank(b) => Term::Blank(b),
        }
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

/// One RDF statement. Literals never appear in subject or predicate position
/// by construction of the types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub subject: Resource,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Resource>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }
}

/// An indexed set of triples plus the prefix map collected while parsing.
///
/// Insertion keeps the subject/predicate/object indexes consistent with the
/// triple set; duplicate inserts leave the cardinality unchanged.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: BTreeMap<String, Iri>,
    by_subject: BTreeMap<Resource, BTreeSet<Triple>>,
    by_predicate: BTreeMap<Iri, BTreeSet<Triple>>,
    by_object: BTreeMap<Term, BTreeSet<Triple>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Inserts a triple; returns false when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if !self.triples.insert(triple.clone()) {
            return false;
        }
        self.by_subject
            .entry(triple.subject.clone())
            .or_default()
            .insert(triple.clone());
        self.by_predicate
            .entry(triple.predicate.clone())
            .or_default()
            .insert(triple.clone());
        self.by_object
            .entry(triple.object.clone())
            .or_default()
            .insert(triple);
        true
    }

    /// Removes a triple; returns false when it was absent.
    pub fn remove(&mut self, triple: &Triple) -> bool {
        if !self.triples.remove(triple) {
            return false;
        }
        if let Some(set) = self.by_subject.get_mut(&triple.subject) {
            set.remove(triple);
            if set.is_empty() {
                self.by_subject.remove(&triple.subject);
            }
        }
        if let Some(set) = self.by_predicate.get_mut(&triple.predicate) {
            set.remove(triple);
            if set.is_empty() {
                self.by_predicate.remove(&triple.predicate);
            }
        }
        if let Some(set) = self.by_object.get_mut(&triple.object) {
            set.remove(triple);
            if set.is_empty() {
                self.by_object.remove(&triple.object);
            }
        }
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// Iterates all triples in canonical (sorted) order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn subject_triples(&self, subject: &Resource) -> impl Iterator<Item = &Triple> {
        self.by_subject.get(subject).into_iter().flatten()
    }

    pub fn predicate_triples(&self, predicate: &Iri) -> impl Iterator<Item = &Triple> {
        self.by_predicate.get(predicate).into_iter().flatten()
    }

    pub fn object_triples(&self, object: &Term) -> impl Iterator<Item = &Triple> {
        self.by_object.get(object).into_iter().flatten()
    }

    /// Distinct subjects, in sorted order.
    pub fn subjects(&self) -> impl Iterator<Item = &Resource> {
        self.by_subject.keys()
    }

    pub fn declare_prefix(&mut self, prefix: impl Into<String>, namespace: Iri) {
        // Last declaration wins.
        self.prefixes.insert(prefix.into(), namespace);
    }

    pub fn prefixes(&self) -> &BTreeMap<String, Iri> {
        &self.prefixes
    }

    /// Union of two graphs: triples unioned, prefix maps merged with the
    /// right-hand side winning on conflicts.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut out = self.clone();
        for t in other.iter() {
            out.insert(t.clone());
        }
        for (p, ns) in other.prefixes() {
            out.declare_prefix(p.clone(), ns.clone());
        }
        out
    }

    /// All classes in use, i.e. distinct IRI objects of rdf:type triples.
    pub fn classes(&self) -> BTreeSet<Iri> {
        let rdf_type = Iri::new(vocab::RDF_TYPE).unwrap();
        self.predicate_triples(&rdf_type)
            .filter_map(|t| t.object.iri().cloned())
            .collect()
    }

    /// Types declared for a resource.
    pub fn types_of(&self, resource: &Resource) -> BTreeSet<Iri> {
        self.subject_triples(resource)
            .filter(|t| t.predicate.as_str() == vocab::RDF_TYPE)
            .filter_map(|t| t.object.iri().cloned())
            .collect()
    }

    /// Subjects carrying `rdf:type <class>`.
    pub fn instances_of(&self, class: &Iri) -> BTreeSet<Resource> {
        let rdf_type = Iri::new(vocab::RDF_TYPE).unwrap();
        self.predicate_triples(&rdf_type)
            .filter(|t| t.object.iri() == Some(class))
            .map(|t| t.subject.clone())
            .collect()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

/// Expands a qname against a prefix map: namespace + local name.
pub fn expand_qname(prefixes: &BTreeMap<String, Iri>, qname: &str) -> Result<Iri, RdfError> {
    let (prefix, local) = qname
        .split_once(':')
        .ok_or_else(|| RdfError::UnresolvedPrefix(qname.to_string()))?;
    let ns = prefixes
        .get(prefix)
        .ok_or_else(|| RdfError::UnresolvedPrefix(prefix.to_string()))?;
    Iri::new(format!("{}{}", ns.as_str(), local))
}

/// Compacts an IRI to a qname using the longest matching declared namespace,
/// provided the remainder is a safe local name. Inverse of `expand_qname`
/// for every declared prefix.
pub fn compact_iri(prefixes: &BTreeMap<String, Iri>, iri: &Iri) -> Option<String> {
    let mut best: Option<(&String, &Iri)> = None;
    for (p, ns) in prefixes {
        if iri.as_str().starts_with(ns.as_str()) {
            match best {
                Some((_, b)) if b.as_str().len() >= ns.as_str().len() => {}
                _ => best = Some((p, ns)),
            }
        }
    }
    let (prefix, ns) = best?;
    let local = &iri.as_str()[ns.as_str().len()..];
    if is_safe_local_name(local) {
        Some(format!("{}:{}", prefix, local))
    } else {
        None
    }
}

/// Local names we emit in compact form: what the subset parser reads back.
fn is_safe_local_name(local: &str) -> bool {
    if local.is_empty() || local.starts_with('.') || local.ends_with('.') {
        return false;
    }
    let mut chars = local.chars();
    let first = chars.next().unwrap();
    if !(first.is_ascii_alphanumeric() || first == '_') {
        return false;
    }
    local
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn iri_validation() {
        assert!(Iri::new("https://example.org/x").is_ok());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("no-scheme").is_err());
        assert!(Iri::new("http://example.org/a b").is_err());
    }

    #[test]
    fn duplicate_insert_keeps_cardinality() {
        let mut g = Graph::new();
        let t = Triple::new(iri("urn:s"), iri("urn:p"), iri("urn:o"));
        assert!(g.insert(t.clone()));
        assert!(!g.insert(t));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn indexes_follow_removal() {
        let mut g = Graph::new();
        let t = Triple::new(iri("urn:s"), iri("urn:p"), iri("urn:o"));
        g.insert(t.clone());
        assert!(g.remove(&t));
        assert_eq!(g.len(), 0);
        assert_eq!(g.subject_triples(&t.subject).count(), 0);
        assert_eq!(g.predicate_triples(&t.predicate).count(), 0);
        assert_eq!(g.object_triples(&t.object).count(), 0);
    }

    #[test]
    fn expand_qname_basic() {
        let mut prefixes = BTreeMap::new();
        prefixes.insert("sto".to_string(), iri("https://w3id.org/i40/sto#"));
        let expanded = expand_qname(&prefixes, "sto:OPC_UA").unwrap();
        assert_eq!(expanded.as_str(), "https://w3id.org/i40/sto#OPC_UA");
        assert!(matches!(
            expand_qname(&prefixes, "rami:Communication"),
            Err(RdfError::UnresolvedPrefix(_))
        ));
    }

    #[test]
    fn expand_default_prefix() {
        let mut prefixes = BTreeMap::new();
        prefixes.insert("".to_string(), iri("https://example.org/base#"));
        let expanded = expand_qname(&prefixes, ":x").unwrap();
        assert_eq!(expanded.as_str(), "https://example.org/base#x");
    }

    #[test]
    fn compact_is_inverse_of_expand() {
        let mut prefixes = BTreeMap::new();
        prefixes.insert("sto".to_string(), iri("https://w3id.org/i40/sto#"));
        prefixes.insert("rami".to_string(), iri("https://w3id.org/i40/rami#"));
        for qname in ["sto:OPC_UA", "rami:Communication", "sto:IEC_62541"] {
            let expanded = expand_qname(&prefixes, qname).unwrap();
            assert_eq!(compact_iri(&prefixes, &expanded).as_deref(), Some(qname));
        }
    }

    #[test]
    fn union_cardinality_bound() {
        let mut g = Graph::new();
        let mut h = Graph::new();
        let a = Triple::new(iri("urn:a"), iri("urn:p"), iri("urn:b"));
        let b = Triple::new(iri("urn:b"), iri("urn:p"), iri("urn:c"));
        g.insert(a.clone());
        h.insert(a);
        h.insert(b);
        let u = g.union(&h);
        assert!(u.len() <= g.len() + h.len());
        assert_eq!(u.len(), 2);
    }
}
