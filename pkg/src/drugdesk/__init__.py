"""drugdesk: a deterministic, desk-scale drug discovery pipeline.

Subpackages
-----------
molgraph        SMILES parsing, canonicalization, descriptors, fingerprints
kgraph          typed biomedical knowledge graph with path search and ranking
screening       pocket-aware surrogate docking and library analytics
pbpk            ADMET-to-PK parameter derivation and compartmental simulation
pharmacologist  rule-based candidate evaluation and penalty feedback
optimizer       fragment-mutation BO/GA hybrid over molecular graphs
orchestrator    agent-team state machine with replayable traces
service         HTTP front end for interactive runs

Everything is deterministic: same inputs and seeds, same bytes out.
"""

__version__ = "0.1.0"
