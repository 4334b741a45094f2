# Standard Library
import math
from typing import NamedTuple, Sequence

# Third-Party Library
import numpy as np

# My Library
from utils.color import red
from utils.errors import InvalidParams
from tessellation.rght import Grid
from tessellation.metrics import growth_constant


class DhrgModel(NamedTuple):
    # number of vertices
    n: int
    # vertices are placed in B_radius
    radius: int
    # radial[r] = P(X = r), r = 0 .. radius
    radial: np.ndarray
    # conn[d] = probability that two vertices at distance d are linked, d = 0 .. 2 * radius
    conn: np.ndarray


def exponential_radial(radius: int, alpha: float) -> np.ndarray:
    """ P(X = r) proportional to exp(alpha * r) """
    logits = alpha * np.arange(radius + 1, dtype=np.float64)
    weights = np.exp(logits - logits.max())
    return weights / weights.sum()


def logistic_connection(radius: int, T: float, Rprime: float) -> np.ndarray:
    """ p(x) = 1 / (1 + exp(T * x + R')) """
    x = np.arange(2 * radius + 1, dtype=np.float64)
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(T * x + Rprime))


def default_alpha(grid: Grid, alpha_ratio: float = 0.75) -> float:
    return alpha_ratio * math.log(growth_constant(grid))


def make_model(n: int, radius: int, grid: Grid | None = None, alpha: float | None = None,
               alpha_ratio: float = 0.75, T: float = 1.0, Rprime: float = -5.0,
               radial: Sequence[float] | None = None, conn: Sequence[float] | None = None) -> DhrgModel:
    """
    Builds a model from explicit tables or from the built-in families.

    Args:
        radial: explicit P(X = r); overrides alpha.
        conn: explicit connection table; overrides T and Rprime.
        alpha: defaults to alpha_ratio * log(gamma(grid)).

    Raises:
        InvalidParams: tables of the wrong length, negative probabilities, a radial table that
            does not sum to 1, or connection probabilities outside [0, 1].
    """
    if n < 1 or radius < 0:
        raise InvalidParams("model needs n >= 1 and radius >= 0", n=n, radius=radius)

    if radial is None:
        if alpha is None:
            assert grid is not None, red("either alpha, a radial table or a grid is needed")
            alpha = default_alpha(grid, alpha_ratio)
        radial_table = exponential_radial(radius, alpha)
    else:
        radial_table = np.asarray(radial, dtype=np.float64)
        if len(radial_table) != radius + 1 or (radial_table < 0).any():
            raise InvalidParams("radial table needs radius + 1 nonnegative entries", length=len(radial_table))
        if abs(radial_table.sum() - 1.0) > 1e-12:
            raise InvalidParams("radial table must sum to 1", total=float(radial_table.sum()))

    if conn is None:
        conn_table = logistic_connection(radius, T, Rprime)
    else:
        conn_table = np.asarray(conn, dtype=np.float64)
        if len(conn_table) != 2 * radius + 1:
            raise InvalidParams("connection table needs 2 * radius + 1 entries", length=len(conn_table))
    if ((conn_table < 0) | (conn_table > 1)).any():
        raise InvalidParams("connection probabilities must lie in [0, 1]")

    return DhrgModel(n, radius, radial_table, conn_table)


def cell_weights(model: DhrgModel, grid: Grid) -> np.ndarray:
    """ a(r) = P(X = r) / |R_r|, the probability of one given cell of ring r """
    return np.array([model.radial[r] / grid.ring_size(r) for r in range(model.radius + 1)], dtype=np.float64)
