"""Model sets shared by the test modules (the acceptance sweep bounds)."""
from functools import lru_cache

from sltcalc.slt_model import iter_classT, iter_nonnormal


@lru_cache(maxsize=None)
def normal_models(max_m=12, max_d=3):
    return tuple(iter_classT(max_m, max_d))


@lru_cache(maxsize=None)
def nonnormal_models(max_m=20):
    return tuple(iter_nonnormal(max_m))


def all_models():
    return normal_models() + nonnormal_models()
