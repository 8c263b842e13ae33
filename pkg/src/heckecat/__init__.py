"""Exact computations in Hecke algebras and in the localized-bimodule
incarnation of the Hecke category of a Coxeter system with a realization."""

__version__ = "0.1.0"
