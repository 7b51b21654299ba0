from .engine import BasisTable, Element, Presentation, compute_basis, element_of_word, multiply
from .presentations import (
    double_factorial_odd,
    idempotent_presentation,
    present_bmwA,
    present_bmwB,
    present_heckeB,
    present_tlb,
)
from .trace import MarkovTrace, solve_markov_trace
