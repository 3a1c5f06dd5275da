"""Reference posterior computed directly from counts.

This module deliberately shares no scoring code with :mod:`itlex.itnet`:
it works from the raw count dictionaries with plain ``math`` (for the
probabilities) and exact fractions (for the ranking). Tests use it to check
that network activation ranks outputs exactly as the naive-Bayes posterior
does.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .errors import SmoothingRequired

__all__ = ["posterior_oracle", "oracle_ranking"]


def _vocab(counts) -> list[str]:
    return sorted(t for t, c in counts.items() if c > 0)


def _estimates(store, lam):
    """Closures for the add-lambda estimates P(i), P(j), P(i, j)."""
    in_vocab, out_vocab = _vocab(store.c_in), _vocab(store.c_out)
    n = store.n_samples
    d_in = n + lam * len(in_vocab)
    d_out = n + lam * len(out_vocab)
    d_joint = n + lam * len(in_vocab) * len(out_vocab)

    def p_in(i):
        return (store.c_in.get(i, 0) + lam) / d_in

    def p_out(j):
        return (store.c_out.get(j, 0) + lam) / d_out

    def p_joint(i, j):
        return (store.c_joint.get((i, j), 0) + lam) / d_joint

    return in_vocab, out_vocab, p_in, p_out, p_joint


def posterior_oracle(store, inputs: Iterable[str]) -> dict[str, float]:
    """Normalised naive-Bayes posterior over the store's output tokens.

    Inputs the store has never seen are ignored.
    """
    if not store.lam > 0:
        raise SmoothingRequired("the oracle needs lambda > 0")
    in_vocab, out_vocab, p_in, p_out, p_joint = _estimates(store, store.lam)
    known = [i for i in set(inputs) if i in set(in_vocab)]
    log_u = {}
    for j in out_vocab:
        u = math.log(p_out(j))
        for i in known:
            u += math.log(p_joint(i, j) / (p_in(i) * p_out(j)))
        log_u[j] = u
    if not log_u:
        return {}
    top = max(log_u.values())
    z = sum(math.exp(u - top) for u in log_u.values())
    return {j: math.exp(u - top) / z for j, u in log_u.items()}


def oracle_ranking(store, inputs: Iterable[str]) -> list[str]:
    """Output tokens by exact descending posterior, ties by smallest token.

    Dropping the factors that depend only on the inputs, the posterior of j
    is proportional to ``P(j) ** (1 - k) * prod_i P(i, j)`` over the k known
    inputs, which is compared here in exact rational arithmetic.
    """
    if not store.lam > 0:
        raise SmoothingRequired("the oracle needs lambda > 0")
    lam = Fraction(store.lam)
    in_vocab, out_vocab, _, p_out, p_joint = _estimates(store, lam)
    known = [i for i in set(inputs) if i in set(in_vocab)]
    key = {}
    for j in out_vocab:
        v = p_out(j) ** (1 - len(known))
        for i in known:
            v *= p_joint(i, j)
        key[j] = v
    return sorted(out_vocab, key=lambda j: (-key[j], j))
