"""A desk-scale workbench for constructive set theory: formula handling,
hierarchy classification, fundamental-operation compilation over
hereditarily finite sets, Heyting-valued semantics over finite formal
topologies, the double-negation translation, an intuitionistic sequent
prover, and finite large-set checkers."""

__version__ = "0.1.0"
