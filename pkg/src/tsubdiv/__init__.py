"""Find 1-subdivisions of transitive tournaments inside host tournaments.

The randomized embedder lives in :mod:`tsubdiv.embedder`; the exact oracle
used to check it in :mod:`tsubdiv.oracle`.  Hot loops run in a compiled
extension when it is available (see :data:`tsubdiv.kernels.BACKEND`).
"""
from .bounds import default_probability, host_order, subdivision_order
from .certificate import (SubdivisionCertificate, VerificationReport, read_certificate,
                          verify_certificate, write_certificate)
from .embedder import (EmbedderConfig, EmbeddingResult, GreedyFailure, PairSchedule, SampleReport,
                       check_properties, find_subdivision, greedy_embed, order_pairs,
                       prune_low_pairs, sample_base_pool, select_base)
from .generators import (RotationalSymbolSet, least_paley_order, paley, random_tournament,
                         read_tournament, rotational, transitive, write_tournament)
from .kernels import BACKEND
from .oracle import (SearchBudget, all_tournaments_contain, contains_subdivision_exact,
                     cross_validate, min_all_contain)
from .tournament import (LowConnectivityGraph, Tournament, TournamentError, best_partner,
                         best_partners, common_out_in, connectivity, connectivity_matrix,
                         low_connectivity_graph)

__version__ = "0.1.0"
