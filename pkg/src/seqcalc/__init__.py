"""Sequent calculus toolkit: checking, translation, cut elimination, search."""

__version__ = "0.1.0"
