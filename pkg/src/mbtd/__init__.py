"""Maker-Breaker total domination games on small graphs.

Staller (Maker) tries to claim every neighbor of some vertex; Dominator
(Breaker) tries to claim a total dominating set.  The package provides the
graph families the theory is built on, an exact memoized solver, the
constructive strategies with validation harnesses, a verification campaign
runner, a CLI, and an HTTP play service.
"""

from .game import (GameStatus, OutcomeClass, OutcomeReport, Player, Position,
                   WinningSetSystem, classify_outcome, reduce, status,
                   transcript, replay_transcript, winning_sets)
from .gadgets import (GadgetEmbedding, extract_tau, find_gadget, gadget_graph,
                      tau_certificate_ok)
from .graphs import (FactorCertificate, Graph, GraphError, StructureReport,
                     classify_structure, complete_graph, cycle_graph,
                     find_factor, from_graph6, from_json_edges, generate,
                     generate_bipartite_circulant, generate_eta, generate_gp,
                     generate_necklace, generate_omega, parse_graph, serialize,
                     star_graph, to_graph6, to_json_edges, truncate, validate)
from .solver import (SolveResult, Solver, SolverConfig, best_response,
                     canonical_key, find_double_trap_move, immediate_threats,
                     shared_solver, solve)
from .strategies import (PairingPlan, Strategy, bipartite_circulant_strategy,
                         eta_strategies, find_pairing_plan, identity_embedding,
                         omega_strategies, pairing_strategy, partition_strategy,
                         prism_strategy, staller_gadget_strategy,
                         verify_pairing_plan)
from .verify import (DEFAULT_SUITE, TheoremCase, ValidationReport, run_campaign,
                     validate_strategy, verify_theorem)

__version__ = "0.1.0"
