"""Exact-arithmetic workbench: characters, alcove combinatorics, socle
tables, module catalogs, characteristic-0 sheaf cohomology and quadric
Frobenius decomposition arithmetic for groups of rank at most 2."""

__version__ = "0.1.0"
