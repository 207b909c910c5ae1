"""Layer-parallel verification of natural-deduction proof graphs."""

from .formula import And, Atom, Formula, Iff, Implies, Not, Or, entails, evaluate, parse, to_text
from .layering import LayerMap, compute_layers
from .proofgraph import ProofGraph, ProofGraphError, ProofNode, Rule, load, save
from .verifier import Reason, Strategy, StrategyKind, Verdict, verify

__version__ = "0.1.0"
