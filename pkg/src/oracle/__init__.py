"""
Exhaustive absorbing-chain oracle for small graphs
"""
from .markov_chain import ChainSolution, exact_fixation_markov, fixation_slope

__all__ = ['ChainSolution', 'exact_fixation_markov', 'fixation_slope']
