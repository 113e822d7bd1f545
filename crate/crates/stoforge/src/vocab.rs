//! Well-known namespaces and term IRIs used across the toolkit.

/// Namespace prefixes for the vocabularies this toolkit reads and writes.
pub mod ns {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const DCTERMS: &str = "http://purl.org/dc/terms/";
    pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
    pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
    pub const STO: &str = "https://w3id.org/i40/sto#";
    pub const RAMI: &str = "https://w3id.org/i40/rami#";
    pub const DBO: &str = "http://dbpedia.org/ontology/";
    pub const DBR: &str = "http://dbpedia.org/resource/";
    pub const YAGO: &str = "http://dbpedia.org/class/yago/";
    pub const LINGG: &str = "http://purl.org/linguistics/gold/";
}

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_SUBPROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
pub const OWL_SYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#SymmetricProperty";
pub const OWL_TRANSITIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
pub const OWL_INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const SKOS_ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
pub const DCTERMS_LICENSE: &str = "http://purl.org/dc/terms/license";
pub const DCTERMS_SUBJECT: &str = "http://purl.org/dc/terms/subject";

pub const STO_STANDARD: &str = "https://w3id.org/i40/sto#Standard";
pub const STO_STANDARD_ORGANIZATION: &str = "https://w3id.org/i40/sto#StandardOrganization";
pub const STO_STANDARDIZATION_FRAMEWORK: &str =
    "https://w3id.org/i40/sto#StandardizationFramework";
pub const STO_FRAMEWORK_LAYER: &str = "https://w3id.org/i40/sto#FrameworkLayer";
pub const STO_UNTYPED_ENTITY: &str = "https://w3id.org/i40/sto#UntypedEntity";
pub const STO_HAS_TAG: &str = "https://w3id.org/i40/sto#hasTag";
pub const STO_HAS_PUBLISHER: &str = "https://w3id.org/i40/sto#hasPublisher";
pub const STO_HAS_DEVELOPER: &str = "https://w3id.org/i40/sto#hasDeveloper";
pub const STO_HAS_DOMAIN: &str = "https://w3id.org/i40/sto#hasDomain";
pub const STO_HAS_CLASSIFICATION: &str = "https://w3id.org/i40/sto#hasClassification";
pub const STO_HAS_DBPEDIA_RESOURCE: &str = "https://w3id.org/i40/sto#hasDBpediaResource";
pub const STO_HAS_WIKIPEDIA_ARTICLE: &str = "https://w3id.org/i40/sto#hasWikipediaArticle";
pub const STO_HAS_OFFICIAL_RESOURCE: &str = "https://w3id.org/i40/sto#hasOfficialResource";
pub const STO_RELATED_TO: &str = "https://w3id.org/i40/sto#relatedTo";
pub const STO_IS_INTEROPERABLE_WITH: &str = "https://w3id.org/i40/sto#isInteroperableWith";
pub const STO_INTEGRATES_WITH: &str = "https://w3id.org/i40/sto#integratesWith";
pub const STO_BASED_ON: &str = "https://w3id.org/i40/sto#basedOn";
pub const STO_HAS_LAYER: &str = "https://w3id.org/i40/sto#hasLayer";
pub const STO_DIMENSION: &str = "https://w3id.org/i40/sto#dimension";
pub const STO_DEFINES_TERM: &str = "https://w3id.org/i40/sto#definesTerm";
pub const STO_SECONDARY_LICENSE: &str = "https://w3id.org/i40/sto#secondaryLicense";

pub const DBO_WIKI_PAGE_ID: &str = "http://dbpedia.org/ontology/wikiPageID";
pub const DBO_WIKI_PAGE_REVISION_ID: &str = "http://dbpedia.org/ontology/wikiPageRevisionID";
pub const DBO_WIKI_PAGE_WIKI_LINK: &str = "http://dbpedia.org/ontology/wikiPageWikiLink";
pub const DBO_WIKI_PAGE_EXTERNAL_LINK: &str =
    "http://dbpedia.org/ontology/wikiPageExternalLink";
pub const DBO_PERSON: &str = "http://dbpedia.org/ontology/Person";
pub const DBO_PLACE: &str = "http://dbpedia.org/ontology/Place";
pub const LINGG_HYPERNYM: &str = "http://purl.org/linguistics/gold/hypernym";
