"""Generation and text I/O of complete bi-objective graph instances.

Instances are complete graphs whose edges carry a pair of positive integer
costs.  Generation draws each cost pair from a Gaussian copula so that the
sample correlation between the two objectives approximates a requested factor
rho, while both marginals stay (near-)uniform on {1, ..., r}.

Reproducibility: the generator is fully specified and has no library
dependence.  Uniform deviates come from splitmix64 (Steele, Lea & Flood's
published 64-bit mixer; state advances by 0x9E3779B97F4A7C15 per draw), normal
pairs from the Box-Muller transform, and the copula map uses the exact normal
CDF via erf.  Each edge consumes exactly two uniform draws, in edge order
(u, v) with u < v, so instances are bit-reproducible from (n, r, rho, seed)
in any implementation of this recipe.

File format (UTF-8 text, 1-indexed vertices)::

    p bomst <n> <m>          header, m = n*(n-1)/2
    e <u> <v> <c1> <c2>      one line per edge, u < v
    # ...                    comment lines are ignored
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MIN_VERTICES = 3

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Instance:
    """Complete bi-objective graph: n vertices, one cost pair per vertex pair."""

    n: int
    edges: tuple[tuple[int, int, int, int], ...]  # (u, v, c1, c2), u < v, sorted

    def __post_init__(self):
        expected = self.n * (self.n - 1) // 2
        if len(self.edges) != expected:
            raise ValueError(f"complete graph on {self.n} vertices needs {expected} edges, got {len(self.edges)}")

    @property
    def num_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class GenParams:
    n: int
    r: int
    rho: float
    seed: int

    def __post_init__(self):
        if self.n < MIN_VERTICES:
            raise ValueError(f"need at least {MIN_VERTICES} vertices, got {self.n}")
        if self.r < 1:
            raise ValueError("cost upper limit must be >= 1")
        if not -1.0 <= self.rho <= 1.0:
            raise ValueError("correlation factor must lie in [-1, 1]")


class SplitMix64:
    """The splitmix64 mixer; tiny, portable, and fully specified."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        # strictly inside (0, 1) so logs and CDF inverses are always safe
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53


def _normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def generate(params: GenParams) -> Instance:
    """Deterministically generate a complete instance for the given parameters.

    Each edge draws a standard bivariate normal pair with correlation rho
    (via Box-Muller), maps each coordinate through the normal CDF to a uniform
    in (0, 1), and scales it to {1, ..., r}.
    """
    rng = SplitMix64(params.seed)
    rho = params.rho
    mix = math.sqrt(1.0 - rho * rho)
    r = params.r
    edges = []
    for u in range(1, params.n):
        for v in range(u + 1, params.n + 1):
            u1 = rng.next_unit()
            u2 = rng.next_unit()
            radius = math.sqrt(-2.0 * math.log(u1))
            theta = 2.0 * math.pi * u2
            g1 = radius * math.cos(theta)
            g2 = radius * math.sin(theta)
            x = g1
            y = rho * g1 + mix * g2
            c1 = min(int(_normal_cdf(x) * r) + 1, r)
            c2 = min(int(_normal_cdf(y) * r) + 1, r)
            edges.append((u, v, c1, c2))
    return Instance(params.n, tuple(edges))


class InstanceFormatError(ValueError):
    """Malformed instance file; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def write_instance(instance: Instance, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            for chunk in comment.splitlines():
                fh.write(f"# {chunk}\n")
        fh.write(f"p bomst {instance.n} {instance.num_edges}\n")
        for u, v, c1, c2 in instance.edges:
            fh.write(f"e {u} {v} {c1} {c2}\n")


def read_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()

    n = None
    m = None
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    header_line = 0
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "p":
                raise InstanceFormatError(line_no, f"expected header 'p bomst <n> <m>', got {line!r}")
            if len(fields) != 4 or fields[1] != "bomst":
                raise InstanceFormatError(line_no, f"malformed header {line!r}")
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise InstanceFormatError(line_no, f"non-integer header fields in {line!r}") from None
            if n < 2:
                raise InstanceFormatError(line_no, f"vertex count {n} too small")
            if m != n * (n - 1) // 2:
                raise InstanceFormatError(line_no, f"edge count {m} does not match complete graph on {n} vertices")
            header_line = line_no
            continue
        if fields[0] != "e":
            raise InstanceFormatError(line_no, f"expected edge line, got {line!r}")
        if len(fields) != 5:
            raise InstanceFormatError(line_no, f"edge line needs 'e u v c1 c2', got {line!r}")
        try:
            u, v, c1, c2 = (int(f) for f in fields[1:])
        except ValueError:
            raise InstanceFormatError(line_no, f"non-integer edge fields in {line!r}") from None
        if not (1 <= u < v <= n):
            raise InstanceFormatError(line_no, f"edge ({u}, {v}) violates 1 <= u < v <= {n}")
        if c1 < 1 or c2 < 1:
            raise InstanceFormatError(line_no, f"cost out of range on edge ({u}, {v}): costs must be >= 1")
        if (u, v) in seen:
            raise InstanceFormatError(line_no, f"duplicate edge ({u}, {v})")
        seen[(u, v)] = (c1, c2)

    if n is None:
        raise InstanceFormatError(len(lines) + 1, "missing header line")
    if len(seen) != m:
        missing = next(
            (u, v) for u in range(1, n) for v in range(u + 1, n + 1) if (u, v) not in seen
        )
        raise InstanceFormatError(
            header_line, f"incomplete graph: {len(seen)} of {m} edges present, e.g. missing {missing}"
        )
    edges = tuple((u, v, *seen[(u, v)]) for u in range(1, n) for v in range(u + 1, n + 1))
    return Instance(n, edges)
