//! RDF molecules, molecule templates, and the molecule store with URI
//! minting and label-based deduplication.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::analytics::SimpleGraph;
use crate::rdf::{Graph, Iri, Resource, Term, Triple};
use crate::vocab;

#[derive(Debug, Error, PartialEq)]
pub enum StoreError {
    #[error("empty name")]
    EmptyName,
    #[error("unknown subject {0}")]
    UnknownSubject(Iri),
}

/// All triples sharing one subject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdfMolecule {
    pub subject: Resource,
    pub triples: BTreeSet<Triple>,
}

impl RdfMolecule {
    pub fn new(subject: Resource) -> Self {
        RdfMolecule {
            subject,
            triples: BTreeSet::new(),
        }
    }

    pub fn insert(&mut self, triple: Triple) -> bool {
        debug_assert_eq!(triple.subject, self.subject);
        self.triples.insert(triple)
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Objects of one predicate within this molecule.
    pub fn objects<'a>(&'a self, predicate: &'a str) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples
            .iter()
            .filter(move |t| t.predicate.as_str() == predicate)
            .map(|t| &t.object)
    }

    pub fn first_literal(&self, predicate: &str) -> Option<&str> {
        self.objects(predicate)
            .find_map(|o| o.literal().map(|l| l.lexical.as_str()))
    }

    pub fn first_iri(&self, predicate: &str) -> Option<&Iri> {
        self.objects(predicate).find_map(|o| o.iri())
    }
}

/// Extracts the molecule of one subject: exactly the graph triples with
/// that subject; absent subjects yield an empty molecule.
pub fn extract_molecule(graph: &Graph, subject: &Iri) -> RdfMolecule {
    let resource = Resource::Iri(subject.clone());
    let mut molecule = RdfMolecule::new(resource.clone());
    for t in graph.subject_triples(&resource) {
        molecule.triples.insert(t.clone());
    }
    molecule
}

/// Per-class abstract shape: which properties carry literals and which
/// link to instances of which classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdfMoleculeTemplate {
    pub class: Iri,
    pub datatype_properties: BTreeSet<Iri>,
    pub object_links: BTreeSet<(Iri, Iri)>,
    /// Properties observed with both literal and IRI objects; recorded
    /// under owl:Thing in object_links and listed here.
    pub mixed_properties: BTreeSet<Iri>,
}

/// Map from subject IRI to molecule plus a normalized-label index.
#[derive(Debug, Clone, Default)]
pub struct MoleculeStore {
    molecules: BTreeMap<Iri, RdfMolecule>,
    name_index: BTreeMap<String, Iri>,
}

/// Normalization applied to labels before indexing: case fold, trim,
/// collapse internal whitespace.
pub fn normalize_label(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Deterministic name sanitization used for minting and remote probes:
/// spaces become underscores, characters outside [A-Za-z0-9_.-] drop.
pub fn sanitize_name(name: &str) -> String {
    name.replace(' ', "_")
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
        .collect()
}

impl MoleculeStore {
    pub fn new() -> Self {
        MoleculeStore::default()
    }

    /// Builds the store from a graph: one molecule per IRI subject.
    /// (Blank-node subjects are kept out of the molecule map; the toolkit's
    /// domain data never uses them as molecule roots.)
    pub fn from_graph(graph: &Graph) -> Self {
        let mut store = MoleculeStore::new();
        for subject in graph.subjects() {
            if let Resource::Iri(iri) = subject {
                store.upsert(extract_molecule(graph, iri));
            }
        }
        store
    }

    pub fn len(&self) -> usize {
        self.molecules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.molecules.is_empty()
    }

    pub fn get(&self, subject: &Iri) -> Option<&RdfMolecule> {
        self.molecules.get(subject)
    }

    pub fn contains(&self, subject: &Iri) -> bool {
        self.molecules.contains_key(subject)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Iri, &RdfMolecule)> {
        self.molecules.iter()
    }

    pub fn lookup_name(&self, label: &str) -> Option<&Iri> {
        self.name_index.get(&normalize_label(label))
    }

    /// Unions a molecule into the store and refreshes the name index.
    /// Idempotent for repeated upserts of the same molecule.
    pub fn upsert(&mut self, molecule: RdfMolecule) {
        let Resource::Iri(subject) = molecule.subject.clone() else {
            return;
        };
        let entry = self
            .molecules
            .entry(subject.clone())
            .or_insert_with(|| RdfMolecule::new(molecule.subject.clone()));
        for t in molecule.triples {
            entry.triples.insert(t);
        }
        let labels: Vec<String> = entry
            .triples
            .iter()
            .filter(|t| {
                matches!(
                    t.predicate.as_str(),
                    vocab::RDFS_LABEL | vocab::STO_HAS_TAG
                )
            })
            .filter_map(|t| t.object.literal().map(|l| normalize_label(&l.lexical)))
            .collect();
        for label in labels {
            // First writer wins; collisions surface through the conflict
            // detectors, not the index.
            self.name_index.entry(label).or_insert_with(|| subject.clone());
        }
    }

    pub fn remove(&mut self, subject: &Iri) -> Option<RdfMolecule> {
        let removed = self.molecules.remove(subject);
        if removed.is_some() {
            self.name_index.retain(|_, v| v != subject);
            let rebuild: Vec<RdfMolecule> = self.molecules.values().cloned().collect();
            for m in rebuild {
                self.upsert(m);
            }
        }
        removed
    }

    /// Flattens the store back into a graph.
    pub fn to_graph(&self) -> Graph {
        self.molecules
            .values()
            .flat_map(|m| m.triples.iter().cloned())
            .collect()
    }

    /// Total triples across molecules.
    pub fn triple_count(&self) -> usize {
        self.molecules.values().map(|m| m.triples.len()).sum()
    }
}

/// Mints a deterministic IRI for a name inside a namespace, deduplicating
/// against the store's name index: an existing molecule with the same
/// normalized label wins over a fresh IRI.
pub fn mint_iri(namespace: &Iri, name: &str, store: &MoleculeStore) -> Result<Iri, StoreError> {
    if name.trim().is_empty() {
        return Err(StoreError::EmptyName);
    }
    if let Some(existing) = store.lookup_name(name) {
        return Ok(existing.clone());
    }
    let local = sanitize_name(name);
    if local.is_empty() {
        return Err(StoreError::EmptyName);
    }
    Ok(Iri::new(format!("{}{}", namespace.as_str(), local)).expect("namespace is absolute"))
}

/// Computes one molecule template per class observed on a subject.
/// Untyped subjects count under the pseudo-class sto:UntypedEntity so the
/// molecule partition stays exact; untyped link targets land there too.
pub fn compute_mts(graph: &Graph) -> Vec<RdfMoleculeTemplate> {
    let untyped = Iri::new(vocab::STO_UNTYPED_ENTITY).unwrap();
    // (class, property) -> (saw_literal, target classes)
    let mut shapes: BTreeMap<Iri, BTreeMap<Iri, (bool, BTreeSet<Iri>, bool)>> = BTreeMap::new();
    let mut classes: BTreeSet<Iri> = BTreeSet::new();

    for subject in graph.subjects() {
        let mut types = graph.types_of(subject);
        if types.is_empty() {
            types.insert(untyped.clone());
        }
        classes.extend(types.iter().cloned());
        for t in graph.subject_triples(subject) {
            if t.predicate.as_str() == vocab::RDF_TYPE {
                continue;
            }
            for class in &types {
                let slot = shapes
                    .entry(class.clone())
                    .or_default()
                    .entry(t.predicate.clone())
                    .or_insert((false, BTreeSet::new(), false));
                match &t.object {
                    Term::Literal(_) => slot.0 = true,
                    Term::Iri(o) => {
                        let target_types = graph.types_of(&Resource::Iri(o.clone()));
                        if target_types.is_empty() {
                            slot.1.insert(untyped.clone());
                        } else {
                            slot.1.extend(target_types);
                        }
                        slot.2 = true;
                    }
                    Term::Blank(b) => {
                        let target_types = graph.types_of(&Resource::Blank(b.clone()));
                        if target_types.is_empty() {
                            slot.1.insert(untyped.clone());
                        } else {
                            slot.1.extend(target_types);
                        }
                        slot.2 = true;
                    }
                }
            }
        }
    }

    let owl_thing = Iri::new(vocab::OWL_THING).unwrap();
    classes
        .into_iter()
        .map(|class| {
            let mut template = RdfMoleculeTemplate {
                class: class.clone(),
                datatype_properties: BTreeSet::new(),
                object_links: BTreeSet::new(),
                mixed_properties: BTreeSet::new(),
            };
            if let Some(props) = shapes.get(&class) {
                for (p, (saw_lit, targets, saw_iri)) in props {
                    match (saw_lit, saw_iri) {
                        (true, false) => {
                            template.datatype_properties.insert(p.clone());
                        }
                        (false, true) => {
                            for target in targets {
                                template.object_links.insert((p.clone(), target.clone()));
                            }
                        }
                        (true, true) => {
                            template.object_links.insert((p.clone(), owl_thing.clone()));
                            template.mixed_properties.insert(p.clone());
                        }
                        (false, false) => {}
                    }
                }
            }
            template
        })
        .collect()
}

/// Undirected class graph from the templates' object links: one edge per
/// linked class pair, self-loops dropped, parallel links collapsed. The
/// pseudo-class for untyped entities is not a class, so links touching it
/// stay out of the graph.
pub fn mt_link_graph(mts: &[RdfMoleculeTemplate]) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for template in mts {
        if template.class.as_str() == vocab::STO_UNTYPED_ENTITY {
            continue;
        }
        g.add_node(template.class.clone());
        for (_p, target) in &template.object_links {
            if *target != template.class && target.as_str() != vocab::STO_UNTYPED_ENTITY {
                g.add_edge(template.class.clone(), target.clone());
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    fn sample_graph() -> Graph {
        parse_turtle(
            "@prefix sto: <https://w3id.org/i40/sto#> .\n\
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             sto:OPC_UA a sto:Standard ; rdfs:label \"OPC UA\"@en ;\n\
                 sto:hasPublisher sto:OPC_Foundation .\n\
             sto:OPC_Foundation a sto:StandardOrganization ; rdfs:label \"OPC Foundation\"@en .\n\
             sto:AML a sto:Standard ; rdfs:label \"AML\"@en .\n",
            None,
        )
        .unwrap()
    }

    #[test]
    fn molecule_extraction_is_exact() {
        let g = sample_graph();
        let m = extract_molecule(&g, &iri("https://w3id.org/i40/sto#OPC_UA"));
        assert_eq!(m.triples.len(), 3);
        assert_eq!(
            m.first_iri(vocab::STO_HAS_PUBLISHER).map(|i| i.as_str()),
            Some("https://w3id.org/i40/sto#OPC_Foundation")
        );
        let empty = extract_molecule(&g, &iri("urn:absent"));
        assert!(empty.is_empty());
    }

    #[test]
    fn molecules_partition_the_graph() {
        let g = sample_graph();
        let store = MoleculeStore::from_graph(&g);
        assert_eq!(store.triple_count(), g.len());
        // Independent partition oracle: group triples by subject.
        let mut by_subject: BTreeMap<Resource, usize> = BTreeMap::new();
        for t in g.iter() {
            *by_subject.entry(t.subject.clone()).or_default() += 1;
        }
        for (subject, count) in by_subject {
            let Resource::Iri(s) = subject else { continue };
            assert_eq!(store.get(&s).unwrap().triples.len(), count);
        }
    }

    #[test]
    fn minting_is_deterministic_and_dedups() {
        let g = sample_graph();
        let store = MoleculeStore::from_graph(&g);
        let ns = iri("https://w3id.org/i40/sto#");
        // Existing label resolves to the existing IRI.
        let minted = mint_iri(&ns, "OPC UA", &store).unwrap();
        assert_eq!(minted.as_str(), "https://w3id.org/i40/sto#OPC_UA");
        // New name gets a sanitized fresh IRI.
        let fresh = mint_iri(&ns, "IEC 62541 (draft # 2)", &store).unwrap();
        assert_eq!(fresh.as_str(), "https://w3id.org/i40/sto#IEC_62541_draft__2");
        assert!(matches!(mint_iri(&ns, "  ", &store), Err(StoreError::EmptyName)));
    }

    #[test]
    fn minting_injective_on_distinct_normalized_labels() {
        use std::collections::BTreeSet as Set;
        let store = MoleculeStore::new();
        let ns = iri("urn:ns:");
        let names: Vec<String> = (0..50).map(|i| format!("Standard {} rev-{}", i, i % 7)).collect();
        // Independent normalization pass to identify expected collisions.
        let mut seen: BTreeMap<String, String> = BTreeMap::new();
        let mut minted: Set<String> = Set::new();
        for name in &names {
            let m = mint_iri(&ns, name, &store).unwrap();
            let key = normalize_label(name);
            if let Some(prev) = seen.get(&key) {
                assert_eq!(prev, m.as_str());
            } else {
                assert!(minted.insert(m.as_str().to_string()), "collision on {name}");
                seen.insert(key, m.as_str().to_string());
            }
        }
    }

    #[test]
    fn upsert_is_idempotent_and_unions() {
        let g = sample_graph();
        let mut store = MoleculeStore::from_graph(&g);
        let subject = iri("https://w3id.org/i40/sto#AML");
        let before = store.get(&subject).unwrap().triples.len();
        store.upsert(extract_molecule(&g, &subject));
        assert_eq!(store.get(&subject).unwrap().triples.len(), before);

        let mut extra = RdfMolecule::new(Resource::Iri(subject.clone()));
        extra.insert(Triple::new(
            subject.clone(),
            iri(vocab::STO_HAS_TAG),
            crate::rdf::Literal::lang("AutomationML", "en"),
        ));
        store.upsert(extra);
        assert_eq!(store.get(&subject).unwrap().triples.len(), before + 1);
    }

    #[test]
    fn template_classification() {
        let g = parse_turtle(
            "@prefix ex: <urn:ex:> .\n@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n\
             ex:x rdf:type ex:C ; ex:p \"lit\" ; ex:q ex:y .\n\
             ex:y rdf:type ex:D .\n",
            None,
        )
        .unwrap();
        let mts = compute_mts(&g);
        let c = mts.iter().find(|t| t.class.as_str() == "urn:ex:C").unwrap();
        assert!(c.datatype_properties.contains(&iri("urn:ex:p")));
        assert!(c
            .object_links
            .contains(&(iri("urn:ex:q"), iri("urn:ex:D"))));
        // every (class, property) appears in exactly one field
        for t in &mts {
            for p in &t.datatype_properties {
                assert!(!t.object_links.iter().any(|(lp, _)| lp == p));
            }
        }
    }

    #[test]
    fn mixed_property_goes_to_owl_thing_with_warning() {
        let g = parse_turtle(
            "@prefix ex: <urn:ex:> .\nex:x a ex:C ; ex:p \"lit\" ; ex:p ex:y .\n\
             ex:y a ex:D .\n",
            None,
        )
        .unwrap();
        let mts = compute_mts(&g);
        let c = mts.iter().find(|t| t.class.as_str() == "urn:ex:C").unwrap();
        assert!(c
            .object_links
            .contains(&(iri("urn:ex:p"), iri(vocab::OWL_THING))));
        assert!(c.mixed_properties.contains(&iri("urn:ex:p")));
        assert!(!c.datatype_properties.contains(&iri("urn:ex:p")));
    }

    #[test]
    fn untyped_subject_gets_pseudo_class() {
        let g = parse_turtle("@prefix ex: <urn:ex:> .\nex:x ex:p \"v\" .\n", None).unwrap();
        let mts = compute_mts(&g);
        assert_eq!(mts.len(), 1);
        assert_eq!(mts[0].class.as_str(), vocab::STO_UNTYPED_ENTITY);
    }

    #[test]
    fn link_graph_collapses_directions_and_self_loops() {
        let g = parse_turtle(
            "@prefix ex: <urn:ex:> .\n\
             ex:x a ex:C ; ex:p ex:y ; ex:r ex:x2 .\n\
             ex:y a ex:D ; ex:q ex:x .\n\
             ex:x2 a ex:C .\n",
            None,
        )
        .unwrap();
        let mts = compute_mts(&g);
        let lg = mt_link_graph(&mts);
        // C->D and D->C collapse to one edge; C->C self-loop dropped.
        assert_eq!(lg.edge_count(), 1);
        // Empty template set gives an empty graph.
        assert_eq!(mt_link_graph(&[]).edge_count(), 0);
    }

    #[test]
    fn link_graph_matches_pairwise_scan() {
        let g = sample_graph();
        let mts = compute_mts(&g);
        let lg = mt_link_graph(&mts);
        let mut expected: BTreeSet<(Iri, Iri)> = BTreeSet::new();
        for t in &mts {
            for (_p, target) in &t.object_links {
                if *target == t.class {
                    continue;
                }
                let (a, b) = if t.class <= *target {
                    (t.class.clone(), target.clone())
                } else {
                    (target.clone(), t.class.clone())
                };
                expected.insert((a, b));
            }
        }
        assert_eq!(lg.edge_count(), expected.len());
    }
}
