"""Workbench for pocrims and hoops.

Subpackages:

- ``syntax``: formula and algebra-term ASTs, parsing and printing
- ``algebras``: finite pocrims as operation tables; checking, catalog,
  constructions, enumeration up to isomorphism
- ``linarith``: exact rational piecewise-linear decision oracles for
  identities over the unit interval and the non-negative reals
- ``indirect``: case-template prover for (bounded) hoop identities
- ``kernel``: Hilbert-style proof checking and translation to
  equational proofs over the hoop axioms
- ``semantics``: standard and double-negation semantics over finite
  bounded pocrims
- ``cli``: command-line front end
"""

__version__ = "0.1.0"
