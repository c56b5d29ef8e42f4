"""Catalog of closed-form benchmark functions.

Every function is maximized; classical minimization formulas are negated
when the catalog is built so the rest of the harness never deals with
orientation.  Functions carry property tags (oscillatory, discrete,
mixed_integer, boring, nonsmooth, unimodal, multimodal), bounding-box
domains, optional integer-constrained dimensions, and known-optimum
metadata.

Functions whose optimum sits at the domain midpoint or on all-integer
coordinates are flagged ``predictable_optimum``; a seeded bias shift can
relocate such optima so that position-guessing optimizers gain nothing.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainViolation, IntegralityViolation, NotApplicable

PROPERTY_TAGS = frozenset(
    {
        "oscillatory",
        "discrete",
        "mixed_integer",
        "boring",
        "nonsmooth",
        "unimodal",
        "multimodal",
    }
)

#: Fraction of each dimension's width a bias shift may move the optimum.
SHIFT_FRACTION = 0.1

Formula = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BiasTransform:
    """Seeded translation applied to a function's argument."""

    shift: tuple[float, ...]
    seed: int


@dataclass(frozen=True)
class BenchmarkFunction:
    """A closed-form objective over a bounding box, oriented for maximization."""

    id: str
    dim: int
    domain: tuple[tuple[float, float], ...]
    formula: Formula = field(repr=False, compare=False)
    integer_dims: frozenset[int] = frozenset()
    properties: frozenset[str] = frozenset()
    known_optimum_value: float | None = None
    known_optimum_location: tuple[float, ...] | None = None
    predictable_optimum: bool = False
    # documented upper bound on how many distinct values a discrete-tagged
    # function can return over its whole domain
    discrete_image_bound: int | None = None
    transform: BiasTransform | None = None

    @property
    def lower(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.domain])

    @property
    def upper(self) -> np.ndarray:
        return np.array([hi for _, hi in self.domain])

    @property
    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)


def _is_predictable(location: Sequence[float], domain) -> bool:
    loc = np.asarray(location, dtype=float)
    mid = np.array([0.5 * (lo + hi) for lo, hi in domain])
    return bool(np.all(loc == mid) or all(float(c).is_integer() for c in loc))


def _build(
    fid: str,
    dim: int,
    domain: Sequence[tuple[float, float]],
    formula: Formula,
    properties: Iterable[str],
    optimum_location: Sequence[float],
    integer_dims: Iterable[int] = (),
    discrete_image_bound: int | None = None,
) -> BenchmarkFunction:
    """Construct a catalog entry, checking the type invariants once."""
    domain = tuple((float(lo), float(hi)) for lo, hi in domain)
    tags = frozenset(properties)
    ints = frozenset(integer_dims)
    if not tags <= PROPERTY_TAGS:
        raise ValueError(f"{fid}: unknown tags {sorted(tags - PROPERTY_TAGS)}")
    if any(lo >= hi for lo, hi in domain):
        raise ValueError(f"{fid}: empty interval in domain")
    if ("mixed_integer" in tags) != bool(ints):
        raise ValueError(f"{fid}: mixed_integer tag must match integer_dims")
    loc = tuple(float(c) for c in optimum_location)
    value = float(formula(np.asarray(loc)[None, :])[0])
    fn = BenchmarkFunction(
        id=fid,
        dim=dim,
        domain=domain,
        formula=formula,
        integer_dims=ints,
        properties=tags,
        known_optimum_value=value,
        known_optimum_location=loc,
        predictable_optimum=_is_predictable(loc, domain),
        discrete_image_bound=discrete_image_bound,
    )
    if not all(lo <= c <= hi for c, (lo, hi) in zip(loc, domain)):
        raise ValueError(f"{fid}: stored optimum outside its own domain")
    return fn


# --- formulas (rows of shape (n, d) -> (n,)), already negated where the
# classical definition is minimized ---

def _neg_sphere(x):
    return -np.sum(x * x, axis=-1)


def _neg_abs_sum(x):
    return -np.sum(np.abs(x), axis=-1)


def _neg_rosenbrock(x):
    a, b = x[..., :-1], x[..., 1:]
    return -np.sum(100.0 * (b - a * a) ** 2 + (1.0 - a) ** 2, axis=-1)


def _neg_rastrigin(x):
    d = x.shape[-1]
    return -(10.0 * d + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x), axis=-1))


def _neg_ackley(x):
    d = x.shape[-1]
    quad = np.sqrt(np.sum(x * x, axis=-1) / d)
    osc = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d
    return -(-20.0 * np.exp(-0.2 * quad) - np.exp(osc) + 20.0 + math.e)


def _neg_griewank(x):
    d = x.shape[-1]
    idx = np.sqrt(np.arange(1, d + 1, dtype=float))
    return -(np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / idx), axis=-1) + 1.0)


def _neg_bohachevsky(x):
    x1, x2 = x[..., 0], x[..., 1]
    return -(
        x1 * x1
        + 2.0 * x2 * x2
        - 0.3 * np.cos(3.0 * np.pi * x1)
        - 0.4 * np.cos(4.0 * np.pi * x2)
        + 0.7
    )


def _neg_branin(x):
    x1, x2 = x[..., 0], x[..., 1]
    b = 5.1 / (4.0 * np.pi**2)
    c = 5.0 / np.pi
    t = 1.0 / (8.0 * np.pi)
    return -((x2 - b * x1 * x1 + c * x1 - 6.0) ** 2 + 10.0 * (1.0 - t) * np.cos(x1) + 10.0)


def _neg_bird(x):
    x1, x2 = x[..., 0], x[..., 1]
    return -(
        np.sin(x1) * np.exp((1.0 - np.cos(x2)) ** 2)
        + np.cos(x1) * np.exp((1.0 - np.sin(x1)) ** 2)
        + (x1 - x2) ** 2
    )


def _neg_sixhump_camel(x):
    x1, x2 = x[..., 0], x[..., 1]
    return -(
        (4.0 - 2.1 * x1 * x1 + x1**4 / 3.0) * x1 * x1
        + x1 * x2
        + (-4.0 + 4.0 * x2 * x2) * x2 * x2
    )


def _neg_beale(x):
    x1, x2 = x[..., 0], x[..., 1]
    return -(
        (1.5 - x1 + x1 * x2) ** 2
        + (2.25 - x1 + x1 * x2 * x2) ** 2
        + (2.625 - x1 + x1 * x2**3) ** 2
    )


def _neg_alpine01(x):
    return -np.sum(np.abs(x * np.sin(x) + 0.1 * x), axis=-1)


def _neg_step(x):
    return -np.sum(np.floor(np.abs(x)), axis=-1)


def _neg_sphere_quantized(x):
    return -np.floor(np.sum(x * x, axis=-1))


def _neg_rastrigin_mixed(x):
    # same rastrigin landscape; the catalog constrains one dimension to
    # integers, where the oscillatory term is identically zero
    return _neg_rastrigin(x)


def _gauss_bump(center: tuple[float, ...], width: float) -> Formula:
    c = np.asarray(center)

    def bump(x):
        return np.exp(-np.sum((x - c) ** 2, axis=-1) / (2.0 * width * width))

    return bump


_CATALOG_CACHE: tuple[BenchmarkFunction, ...] | None = None


def catalog() -> list[BenchmarkFunction]:
    """All built-in benchmark functions, in stable order."""
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        _CATALOG_CACHE = tuple(_build_catalog())
    return list(_CATALOG_CACHE)


def _build_catalog() -> list[BenchmarkFunction]:
    box = lambda lo, hi, d: [(lo, hi)] * d
    entries = [
        _build("neg_sphere_2d", 2, box(-5, 5, 2), _neg_sphere, {"unimodal"}, (0.0, 0.0)),
        _build("neg_sphere_5d", 5, box(-5, 5, 5), _neg_sphere, {"unimodal"}, (0.0,) * 5),
        _build(
            "neg_abs_sum_3d", 3, box(-10, 10, 3), _neg_abs_sum,
            {"unimodal", "nonsmooth"}, (0.0, 0.0, 0.0),
        ),
        _build(
            "neg_rosenbrock_2d", 2, box(-2.048, 2.048, 2), _neg_rosenbrock,
            {"unimodal"}, (1.0, 1.0),
        ),
        _build(
            "neg_rastrigin_2d", 2, box(-5.12, 5.12, 2), _neg_rastrigin,
            {"multimodal", "oscillatory"}, (0.0, 0.0),
        ),
        _build(
            "neg_rastrigin_3d", 3, box(-5.12, 5.12, 3), _neg_rastrigin,
            {"multimodal", "oscillatory"}, (0.0, 0.0, 0.0),
        ),
        _build(
            "neg_ackley_2d", 2, box(-10, 30, 2), _neg_ackley,
            {"multimodal", "oscillatory"}, (0.0, 0.0),
        ),
        _build(
            "neg_griewank_2d", 2, box(-50, 50, 2), _neg_griewank,
            {"multimodal", "oscillatory"}, (0.0, 0.0),
        ),
        _build(
            "neg_bohachevsky_2d", 2, box(-15, 8, 2), _neg_bohachevsky,
            {"multimodal", "oscillatory"}, (0.0, 0.0),
        ),
        _build(
            "neg_branin_2d", 2, [(-5, 10), (0, 15)], _neg_branin,
            {"multimodal"}, (math.pi, 2.275),
        ),
        _build(
            "neg_bird_2d", 2, box(-2 * math.pi, 2 * math.pi, 2), _neg_bird,
            {"multimodal"}, (-1.9433471099169006, -3.129922051940661),
        ),
        _build(
            "neg_alpine01_2d", 2, box(-6, 10, 2), _neg_alpine01,
            {"multimodal", "nonsmooth"}, (0.0, 0.0),
        ),
        _build(
            "neg_sixhump_camel_2d", 2, [(-3, 3), (-2, 2)], _neg_sixhump_camel,
            {"multimodal"}, (0.08984201171743994, -0.7126564026537402),
        ),
        _build(
            "neg_beale_2d", 2, box(-4.5, 4.5, 2), _neg_beale,
            {"boring"}, (3.0, 0.5),
        ),
        _build(
            "plateau_bump_2d", 2, box(0, 10, 2), _gauss_bump((5.0, 5.0), 0.4),
            {"boring", "unimodal"}, (5.0, 5.0),
        ),
        _build(
            "plateau_bump_offcenter_2d", 2, box(0, 10, 2),
            _gauss_bump((7.3890560989306495, 2.718281828459045), 0.4),
            {"boring", "unimodal"},
            (7.3890560989306495, 2.718281828459045),
        ),
        _build(
            "neg_step_2d", 2, box(-5.12, 5.12, 2), _neg_step,
            {"discrete", "nonsmooth"}, (0.0, 0.0), discrete_image_bound=11,
        ),
        _build(
            "neg_sphere_quantized_2d", 2, box(-5, 5, 2), _neg_sphere_quantized,
            {"discrete"}, (0.0, 0.0), discrete_image_bound=51,
        ),
        _build(
            "neg_sphere_mixed_3d", 3, box(-5, 5, 3), _neg_sphere,
            {"mixed_integer", "unimodal"}, (0.0, 0.0, 0.0), integer_dims={0},
        ),
        _build(
            "neg_rastrigin_mixed_2d", 2, box(-5.12, 5.12, 2), _neg_rastrigin_mixed,
            {"mixed_integer", "multimodal", "oscillatory"}, (0.0, 0.0),
            integer_dims={1},
        ),
    ]
    ids = [fn.id for fn in entries]
    assert len(ids) == len(set(ids))
    return entries


def get_function(fid: str) -> BenchmarkFunction:
    for fn in catalog():
        if fn.id == fid:
            return fn
    raise KeyError(f"no catalog function with id {fid!r}")


def _check_point(fn: BenchmarkFunction, arr: np.ndarray) -> None:
    if arr.shape != (fn.dim,):
        raise ValueError(f"{fn.id}: expected a point of dimension {fn.dim}")
    lo, hi = fn.lower, fn.upper
    if np.any(arr < lo) or np.any(arr > hi):
        raise DomainViolation(f"{fn.id}: point {arr.tolist()} outside bounding box")
    for i in sorted(fn.integer_dims):
        if not float(arr[i]).is_integer():
            raise IntegralityViolation(
                f"{fn.id}: dimension {i} must be integer, got {arr[i]!r}"
            )


def _shifted_argument(fn: BenchmarkFunction, x: np.ndarray, transform: BiasTransform):
    # references that fall outside the original box after unshifting are
    # clamped, so shifted functions stay defined on the full domain
    y = x - np.asarray(transform.shift)
    return np.clip(y, fn.lower, fn.upper)


def evaluate(
    fn: BenchmarkFunction,
    x: Sequence[float],
    transform: BiasTransform | None = None,
) -> float:
    """Evaluate ``fn`` at a single in-domain point (larger is better)."""
    arr = np.asarray(x, dtype=float)
    _check_point(fn, arr)
    t = transform if transform is not None else fn.transform
    y = arr if t is None else _shifted_argument(fn, arr, t)
    return float(fn.formula(y[None, :])[0])


def evaluate_batch(fn: BenchmarkFunction, points: np.ndarray) -> np.ndarray:
    """Vectorized evaluation of an (n, d) array of in-domain points."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != fn.dim:
        raise ValueError(f"{fn.id}: expected an (n, {fn.dim}) array")
    if np.any(pts < fn.lower) or np.any(pts > fn.upper):
        raise DomainViolation(f"{fn.id}: batch contains out-of-box points")
    for i in sorted(fn.integer_dims):
        col = pts[:, i]
        if np.any(col != np.round(col)):
            raise IntegralityViolation(f"{fn.id}: dimension {i} must be integer")
    if fn.transform is not None:
        pts = _shifted_argument(fn, pts, fn.transform)
    return np.asarray(fn.formula(pts), dtype=float)


def sample_points(fn: BenchmarkFunction, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform in-domain points; integer dimensions sample lattice values."""
    pts = rng.uniform(fn.lower, fn.upper, size=(n, fn.dim))
    for i in sorted(fn.integer_dims):
        lo, hi = fn.domain[i]
        pts[:, i] = rng.integers(math.ceil(lo), math.floor(hi) + 1, size=n)
    return pts


def apply_bias_shift(
    fn: BenchmarkFunction, seed: int
) -> tuple[BenchmarkFunction, BiasTransform]:
    """Derive a translated copy of ``fn`` whose optimum is no longer guessable.

    Each coordinate of the shift is drawn from +/- 10% of its dimension's
    width (integer dimensions draw integer offsets).  Draws that would park
    the new optimum on the boundary, at the midpoint, or on all-integer
    coordinates are rejected and redrawn, so the derived function is never
    predictable again.
    """
    if not fn.predictable_optimum:
        raise NotApplicable(f"{fn.id} has no predictable optimum to hide")
    assert fn.known_optimum_location is not None
    rng = np.random.default_rng(seed)
    loc = np.asarray(fn.known_optimum_location)
    widths = fn.upper - fn.lower
    for _ in range(100):
        shift = rng.uniform(-SHIFT_FRACTION * widths, SHIFT_FRACTION * widths)
        for i in sorted(fn.integer_dims):
            span = math.floor(SHIFT_FRACTION * widths[i])
            shift[i] = float(rng.integers(-span, span + 1))
        new_loc = loc + shift
        inside = np.all(new_loc > fn.lower) and np.all(new_loc < fn.upper)
        if inside and not _is_predictable(new_loc, fn.domain):
            break
    else:  # pragma: no cover - would need a pathological domain
        raise RuntimeError(f"{fn.id}: no usable shift after 100 draws")
    transform = BiasTransform(shift=tuple(shift.tolist()), seed=seed)
    shifted = dataclasses.replace(
        fn,
        transform=transform,
        known_optimum_location=tuple(new_loc.tolist()),
        predictable_optimum=False,
    )
    return shifted, transform


def catalog_json(functions: Sequence[BenchmarkFunction] | None = None) -> list[dict]:
    """Catalog as plain JSON-ready records (consumed by docs and dashboard)."""
    out = []
    for fn in functions if functions is not None else catalog():
        out.append(
            {
                "id": fn.id,
                "dim": fn.dim,
                "domain": [[lo, hi] for lo, hi in fn.domain],
                "integer_dims": sorted(fn.integer_dims),
                "properties": sorted(fn.properties),
                "known_optimum_value": fn.known_optimum_value,
                "predictable_optimum": fn.predictable_optimum,
            }
        )
    return out
