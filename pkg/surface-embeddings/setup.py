from setuptools import find_packages, setup

setup(
    name="surface-embeddings",
    version="0.1.0",
    description="Locally Hamiltonian multigraphs, edge-maximal embeddings and an MCP server",
    packages=find_packages(),
    install_requires=[
        "mcp>=0.9.0,<2",
        "numpy>=1.24.0",
        "networkx>=3.0",
    ],
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "surface-embeddings=src.cli:main",
            "surface-embeddings-server=src.surface_embedding_server:run_server",
        ],
    },
)
