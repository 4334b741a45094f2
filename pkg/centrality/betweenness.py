# Standard Library
from typing import Any, Mapping, NamedTuple

# Third-Party Library
from tqdm import tqdm

# My Library
from utils.color import red, is_quiet
from stg.base import SegmentTreeGraph
from counting.counter import Counter
from counting.paircount import PairCounter
from counting.template import make_template


# colors of the triangle (v1, v, v2)
ENDPOINT, MIDDLE = "k2", "k1"


class BetweennessResult(NamedTuple):
    # id -> b(v)
    scores: dict[int, float]
    gamma: float
    # whether triples with v1 = v2, v1 = v or v2 = v were dropped
    exclude_degenerate: bool


def betweenness_template():
    """ v1 - v - v2 - v1, exponent d(v1, v) + d(v, v2) - d(v1, v2) """
    return make_template((ENDPOINT, MIDDLE, ENDPOINT), ((0, 1), (1, 2), (0, 2)))


def pseudo_betweenness(stg: SegmentTreeGraph, radius: int, emb: Mapping[int, Any], gamma: float,
                       exclude_degenerate: bool = False) -> BetweennessResult:
    """
    b(v) = sum over ordered pairs (v1, v2) of gamma ** (d(v1, v) + d(v, v2) - d(v1, v2)), with
    0 ** 0 = 1 so that gamma = 0 counts the pairs having v on a shortest path.

    All positions are colored as endpoints once; each distinct cell is then colored as the
    middle vertex, evaluated, and uncolored again. Vertices sharing a cell share a score.
    """
    assert 0 <= gamma < 1, red(f"gamma must lie in [0, 1), got: {gamma}")
    counter = Counter(stg, betweenness_template(), radius, mode="linear", coefficients=(1, 1, -1))
    pairs = PairCounter(stg, radius) if exclude_degenerate else None
    for pos in emb.values():
        counter.add(ENDPOINT, pos, 1.0)
        if pairs is not None:
            pairs.add(pos, 1.0)

    n = len(emb)
    by_cell: dict[Any, float] = {}
    scores: dict[int, float] = {}
    for v in tqdm(sorted(emb), desc="betweenness", leave=False, disable=is_quiet()):
        pos = emb[v]
        if pos not in by_cell:
            counter.add(MIDDLE, pos, 1.0)
            score = counter.count_aggregate(lambda depths, exponent: gamma ** exponent)
            counter.add(MIDDLE, pos, -1.0)
            if pairs is not None:
                # v1 = v2 contributes gamma ** (2 d(v1, v)); v1 = v and v2 = v contribute 1 each
                # and overlap only in (v, v)
                profile = pairs.distance_profile(pos)
                score -= sum(x * gamma ** (2 * d) for d, x in enumerate(profile)) + 2 * n - 2
            by_cell[pos] = max(score, 0.0)
        scores[v] = by_cell[pos]
    return BetweennessResult(scores, gamma, exclude_degenerate)
