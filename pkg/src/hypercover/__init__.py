"""hypercover - splitting the edges of hypergraphs into vertex covers."""

__version__ = "0.1.0"
