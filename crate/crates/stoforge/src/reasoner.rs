//! Fixpoint rule engine for property-level inference: symmetric, transitive,
//! inverse, and subproperty rules.
//!
//! Evaluation is semi-naive: each pass fires rules only against the frontier
//! of triples derived in the previous pass, which yields the same least
//! fixpoint as naive iteration without re-deriving known facts. rdf:type is
//! never subject to these rules, and self-loop triples produced by a rule
//! are discarded.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rdf::{Graph, Iri, RdfError, Resource, Term, Triple};
use crate::vocab;

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("conflicting override for {property}: {detail}")]
    ConflictingOverride { property: String, detail: String },
    #[error("{0}")]
    Rdf(#[from] RdfError),
    #[error("line {line}: cannot parse rule '{text}'")]
    Parse { line: usize, text: String },
}

/// The kind of a property rule; `q` is the companion predicate for
/// inverse and subproperty rules.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleKind {
    Symmetric,
    Transitive,
    Inverse,
    Subproperty,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub kind: RuleKind,
    pub p: Iri,
    pub q: Option<Iri>,
}

impl Rule {
    pub fn symmetric(p: Iri) -> Self {
        Rule { kind: RuleKind::Symmetric, p, q: None }
    }

    pub fn transitive(p: Iri) -> Self {
        Rule { kind: RuleKind::Transitive, p, q: None }
    }

    pub fn inverse(p: Iri, q: Iri) -> Self {
        Rule { kind: RuleKind::Inverse, p, q: Some(q) }
    }

    pub fn subproperty(p: Iri, q: Iri) -> Self {
        Rule { kind: RuleKind::Subproperty, p, q: Some(q) }
    }
}

/// Result of a closure computation: the full closure, the newly inferred
/// triples, and counters. `closure = explicit ∪ inferred` and the two parts
/// are disjoint.
#[derive(Debug, Clone)]
pub struct InferenceResult {
    pub closure: Graph,
    pub inferred: BTreeSet<Triple>,
    pub explicit_count: usize,
    pub inferred_count: usize,
    pub iterations: usize,
}

/// Derives rules from owl:SymmetricProperty / owl:TransitiveProperty /
/// owl:inverseOf / rdfs:subPropertyOf declarations in an ontology graph,
/// then applies overrides. Output order is deterministic.
pub fn rules_from_ontology(ontology: &Graph, overrides: &[Rule]) -> Result<Vec<Rule>, RuleError> {
    let rdf_type = Iri::new(vocab::RDF_TYPE).unwrap();
    let mut rules: BTreeSet<Rule> = BTreeSet::new();

    for t in ontology.predicate_triples(&rdf_type) {
        let Some(subject) = t.subject.iri() else { continue };
        match t.object.iri().map(|i| i.as_str()) {
            Some(vocab::OWL_SYMMETRIC_PROPERTY) => {
                rules.insert(Rule::symmetric(subject.clone()));
            }
            Some(vocab::OWL_TRANSITIVE_PROPERTY) => {
                rules.insert(Rule::transitive(subject.clone()));
            }
            _ => {}
        }
    }
    for (pred, kind) in [
        (vocab::OWL_INVERSE_OF, RuleKind::Inverse),
        (vocab::RDFS_SUBPROPERTY_OF, RuleKind::Subproperty),
    ] {
        let pred = Iri::new(pred).unwrap();
        for t in ontology.predicate_triples(&pred) {
            if let (Some(s), Some(o)) = (t.subject.iri(), t.object.iri()) {
                rules.insert(Rule {
                    kind: kind.clone(),
                    p: s.clone(),
                    q: Some(o.clone()),
                });
            }
        }
    }
    for rule in overrides {
        rules.insert(rule.clone());
    }

    // A property cannot be both symmetric and inverse of a distinct one.
    for rule in &rules {
        if rule.kind == RuleKind::Inverse
            && rule.q.as_ref() != Some(&rule.p)
            && rules.contains(&Rule::symmetric(rule.p.clone()))
        {
            return Err(RuleError::ConflictingOverride {
                property: rule.p.to_string(),
                detail: format!(
                    "declared symmetric and inverse of distinct property {}",
                    rule.q.as_ref().unwrap()
                ),
            });
        }
    }

    let mut ordered: Vec<Rule> = rules.into_iter().collect();
    ordered.sort_by(|a, b| a.p.cmp(&b.p).then_with(|| a.kind.cmp(&b.kind)).then_with(|| a.q.cmp(&b.q)));
    Ok(ordered)
}

/// Parses a rule override file: one rule per line, `symmetric <iri>`,
/// `transitive <iri>`, `inverse <iri> <iri>`, `subproperty <iri> <iri>`.
/// IRIs may be angle-bracketed or bare; `#` starts a comment.
pub fn parse_rule_file(text: &str) -> Result<Vec<Rule>, RuleError> {
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap_or("");
        let iris: Vec<Iri> = parts
            .map(|tok| Iri::new(tok.trim_start_matches('<').trim_end_matches('>')))
            .collect::<Result<_, _>>()?;
        let rule = match (kind, iris.as_slice()) {
            ("symmetric", [p]) => Rule::symmetric(p.clone()),
            ("transitive", [p]) => Rule::transitive(p.clone()),
            ("inverse", [p, q]) => Rule::inverse(p.clone(), q.clone()),
            ("subproperty", [p, q]) => Rule::subproperty(p.clone(), q.clone()),
            _ => {
                return Err(RuleError::Parse {
                    line: idx + 1,
                    text: raw.to_string(),
                })
            }
        };
        rules.push(rule);
    }
    Ok(rules)
}

/// Computes the least fixpoint of the rule set over the graph.
pub fn apply_closure(graph: &Graph, rules: &[Rule]) -> InferenceResult {
    let rdf_type = vocab::RDF_TYPE;
    let explicit_count = graph.len();

    let mut closure = graph.clone();
    let mut inferred: BTreeSet<Triple> = BTreeSet::new();
    // Frontier of the last pass; starts as every explicit triple.
    let mut frontier: Vec<Triple> = graph.iter().cloned().collect();
    let mut iterations = 0;

    while !frontier.is_empty() {
        iterations += 1;
        let mut next: Vec<Triple> = Vec::new();
        let mut push = |t: Triple, closure: &mut Graph, inferred: &mut BTreeSet<Triple>| {
            if t.subject_equals_object() {
                return;
            }
            if closure.insert(t.clone()) {
                inferred.insert(t.clone());
                next.push(t);
            }
        };

        for t in &frontier {
            if t.predicate.as_str() == rdf_type {
                continue;
            }
            for rule in rules {
                match rule.kind {
                    RuleKind::Symmetric if t.predicate == rule.p => {
                        if let Some(obj_res) = t.object.as_resource() {
                            push(
                                Triple::new(obj_res, rule.p.clone(), Term::from(t.subject.clone())),
                                &mut closure,
                                &mut inferred,
                            );
                        }
                    }
                    RuleKind::Transitive if t.predicate == rule.p => {
                        // (s,p,x) new, join both directions against the closure.
                        if let Some(x) = t.object.as_resource() {
                            let continuations: Vec<Triple> = closure
                                .subject_triples(&x)
                                .filter(|u| u.predicate == rule.p)
                                .cloned()
                                .collect();
                            for u in continuations {
                                push(
                                    Triple::new(t.subject.clone(), rule.p.clone(), u.object),
                                    &mut closure,
                                    &mut inferred,
                                );
                            }
                        }
                        let incoming: Vec<Triple> = closure
                            .object_triples(&Term::from(t.subject.clone()))
                            .filter(|u| u.predicate == rule.p)
                            .cloned()
                            .collect();
                        for u in incoming {
                            push(
                                Triple::new(u.subject, rule.p.clone(), t.object.clone()),
                                &mut closure,
                                &mut inferred,
                            );
                        }
                    }
                    RuleKind::Inverse if t.predicate == rule.p => {
                        if let Some(obj_res) = t.object.as_resource() {
                            push(
                                Triple::new(
                                    obj_res,
                                    rule.q.clone().unwrap(),
                                    Term::from(t.subject.clone()),
                                ),
                                &mut closure,
                                &mut inferred,
                            );
                        }
                    }
                    RuleKind::Subproperty if t.predicate == rule.p => {
                        push(
                            Triple::new(
                                t.subject.clone(),
                                rule.q.clone().unwrap(),
                                t.object.clone(),
                            ),
                            &mut closure,
                            &mut inferred,
                        );
                    }
                    _ => {}
                }
            }
        }
        frontier = next;
    }

    let inferred_count = inferred.len();
    InferenceResult {
        closure,
        inferred,
        explicit_count,
        inferred_count,
        iterations,
    }
}

impl Triple {
    fn subject_equals_object(&self) -> bool {
        match (&self.subject, &self.object) {
            (Resource::Iri(s), Term::Iri(o)) => s == o,
            (Resource::Blank(s), Term::Blank(o)) => s == o,
            _ => false,
        }
    }
}

/// Standard-pair statistics over a set of relation predicates: distinct
/// unordered pairs plus the assertion-level counts, split by provenance.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RelationPairs {
    /// Unordered pairs connected by an explicit in-scope triple.
    pub explicit_pairs: BTreeSet<(Iri, Iri)>,
    /// Unordered pairs connected only in the closure.
    pub inferred_pairs: BTreeSet<(Iri, Iri)>,
    /// Count of distinct explicit in-scope directed assertions.
    pub explicit_assertions: usize,
    /// Count of distinct inferred in-scope directed assertions.
    pub inferred_assertions: usize,
}

impl RelationPairs {
    pub fn total_pairs(&self) -> usize {
        self.explicit_pairs.len() + self.inferred_pairs.len()
    }
}

/// Collects the distinct unordered pairs connected by any in-scope
/// predicate, split into explicit pairs and inferred additions, alongside
/// the directed assertion counts either reading of the totals can use.
pub fn relation_pairs(result: &InferenceResult, predicates: &BTreeSet<Iri>) -> RelationPairs {
    let mut explicit_pairs = BTreeSet::new();
    let mut inferred_pairs = BTreeSet::new();
    let mut explicit_assertions = 0usize;
    let mut inferred_assertions = 0usize;

    let pair_of = |t: &Triple| -> Option<(Iri, Iri)> {
        let s = t.subject.iri()?.clone();
        let o = t.object.iri()?.clone();
        Some(if s <= o { (s, o) } else { (o, s) })
    };

    for t in result.closure.iter() {
        if !predicates.contains(&t.predicate) {
            continue;
        }
        let Some(pair) = pair_of(t) else { continue };
        if result.inferred.contains(t) {
            inferred_assertions += 1;
        } else {
            explicit_assertions += 1;
            explicit_pairs.insert(pair.clone());
        }
    }
    for t in &result.inferred {
        if !predicates.contains(&t.predicate) {
            continue;
        }
        if let Some(pair) = pair_of(t) {
            if !explicit_pairs.contains(&pair) {
                inferred_pairs.insert(pair);
            }
        }
    }

    RelationPairs {
        explicit_pairs,
        inferred_pairs,
        explicit_assertions,
        inferred_assertions,
    }
}
