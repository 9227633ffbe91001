"""Ontology-based time-aligned multimedia annotation engine."""

__version__ = "0.1.0"
