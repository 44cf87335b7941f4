"""Surface Embeddings toolkit - locally Hamiltonian multigraphs and edge-maximal embeddings."""

__version__ = "0.1.0"
