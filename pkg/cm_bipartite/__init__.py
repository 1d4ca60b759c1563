# flake8: noqa
from .graph import BipartiteGraph, VertexRef, Side, parse_graph, serialize_graph, normalize
from .matching import Matching, max_matching, hall_violator, enumerate_perfect_matchings
from .checker import (
    OrderedMatching, Verdict, Witness, Certificate, peel, is_cohen_macaulay, is_unmixed,
    find_hh_order, verify_hh_order, verify_villarreal_order)
from .complexes import SimplicialComplex, independence_complex
from .oracles import reisner_is_cm, oracle_report
from .exceptions import *

__version__ = '0.1.0.dev0'
