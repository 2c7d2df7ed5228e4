"""Fixed node-type and relation vocabularies for the knowledge graph.

Ten node types and thirty relation types; ingest rejects anything outside
these sets rather than warning, so typos in data files fail fast.
"""

NODE_TYPES = (
    "Anatomy",
    "Biological_process",
    "Cellular_component",
    "Disease",
    "Drug",
    "Exposure",
    "Gene_protein",
    "Molecular_function",
    "Pathway",
    "Phenotype",
)

RELATIONS = (
    "ANATOMY_ANATOMY",
    "ANATOMY_PROTEIN_ABSENT",
    "ANATOMY_PROTEIN_PRESENT",
    "BIOLOGICAL_PROCESS_BIOLOGICAL_PROCESS",
    "BIOLOGICAL_PROCESS_PROTEIN",
    "CELLULAR_COMPONENT_CELLULAR_COMPONENT",
    "CELLULAR_COMPONENT_PROTEIN",
    "DISEASE_DISEASE",
    "DISEASE_PHENOTYPE_NEGATIVE",
    "DISEASE_PHENOTYPE_POSITIVE",
    "DISEASE_PROTEIN",
    "DRUG_DISEASE_CONTRAINDICATION",
    "DRUG_DISEASE_INDICATION",
    "DRUG_DISEASE_OFF_LABEL_USE",
    "DRUG_DRUG",
    "DRUG_PHENOTYPE",
    "DRUG_PROTEIN",
    "EXPOSURE_BIOLOGICAL_PROCESS",
    "EXPOSURE_CELLULAR_COMPONENT",
    "EXPOSURE_DISEASE",
    "EXPOSURE_EXPOSURE",
    "EXPOSURE_MOLECULAR_FUNCTION",
    "EXPOSURE_PROTEIN",
    "MOLECULAR_FUNCTION_MOLECULAR_FUNCTION",
    "MOLECULAR_FUNCTION_PROTEIN",
    "PATHWAY_PATHWAY",
    "PATHWAY_PROTEIN",
    "PHENOTYPE_PHENOTYPE",
    "PHENOTYPE_PROTEIN",
    "PROTEIN_PROTEIN",
)

NODE_TYPE_SET = frozenset(NODE_TYPES)
RELATION_SET = frozenset(RELATIONS)
