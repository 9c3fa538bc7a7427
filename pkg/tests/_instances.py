"""Shared instance set for the test modules (built once per process)."""

from functools import lru_cache

from qgt.algebra import build_algebra
from qgt.families import markov_quiver, torus_projective_quiver, triangle_disk_quiver
from qgt.fields import GF, Q
from qgt.presentations import deformed_relations, make_weights, tetrahedral_presentation, weighted_relations

TORUS_M = {"alpha": 3, "delta": 2, "eta": 1, "beta": 1}

# name -> (expected dimension, description)
EXPECTED_DIMS = {
    "markov-1": 36,
    "markov-2": 72,
    "disk-1": 36,
    "disk-2": 72,
    "torus-3211": 56,
    "tetra-1-1": 36,
    "tetra-2-1": 72,
    "tetra-2-0": 72,
    "tetra-1-0": 36,
    "markov-1-Q": 36,
    "markov-2-Q": 72,
    "disk-deformed-GF2": 36,
}

WEIGHTED = ["markov-1", "markov-2", "disk-1", "disk-2", "torus-3211", "markov-1-Q", "markov-2-Q"]
DEFORMED = ["disk-deformed-GF2"]
TETRA = ["tetra-1-1", "tetra-2-1", "tetra-2-0", "tetra-1-0"]
ALL = WEIGHTED + DEFORMED + TETRA


def _tq_of(name):
    if name.startswith("markov"):
        return markov_quiver()
    if name.startswith("disk"):
        return triangle_disk_quiver()
    return torus_projective_quiver()


@lru_cache(maxsize=None)
def weight_data(name):
    """WeightData used to generate a weighted or deformed instance."""
    if name == "disk-deformed-GF2":
        return make_weights(triangle_disk_quiver(), GF(2), 1, 1, {"1": 1, "2": 0, "3": 0})
    F = Q if name.endswith("-Q") else GF(5)
    m = TORUS_M if name.startswith("torus") else int(name.split("-")[1])
    return make_weights(_tq_of(name), F, m, 1)


@lru_cache(maxsize=None)
def presentation(name):
    F = Q if name.endswith("-Q") else GF(5)
    if name.startswith("tetra"):
        _, m, lam = name.split("-")
        return tetrahedral_presentation(int(m), lam, F)
    if name == "disk-deformed-GF2":
        return deformed_relations(triangle_disk_quiver(), weight_data(name), GF(2))
    return weighted_relations(_tq_of(name), weight_data(name), F)


@lru_cache(maxsize=None)
def algebra(name):
    return build_algebra(presentation(name))



# criterion number -> "CRITERION k: PASS/FAIL ..." (filled by test_acceptance)
ACCEPTANCE_LINES = {}


def same_weights(fit, w):
    """Compare a WeightFit with WeightData; an absent border value means zero."""
    if fit is None or fit.m != w.m or fit.c != w.c:
        return False
    keys = set(fit.b) | set(w.b)
    return all(fit.b.get(k, 0) == w.b.get(k, 0) for k in keys)
