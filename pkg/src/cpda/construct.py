"""Deterministic array generators.

Three families are buildable:

* mn_pda(k, t): the classic single-server array on t-subset rows and
  single-user columns. It satisfies C1 and C2 but never C3 (for t >= 1 the
  covering columns of a symbol are disjoint singletons), so it serves as the
  canonical negative fixture for the relay-routing check.
* c1p / c1pp(h, r, b, lam): rows are b-subsets B, columns are r-subsets A,
  and a cell is a symbol exactly when |A intersect B| = lam. The two variants
  name that symbol differently: c1p keys it by ((A|B)-I, I) and c1pp by
  ((A|B)-I, A-B), with I = A intersect B. Same star pattern, different
  grouping of cells into signals, hence different S and signal widths.
* c2(h, r, b, lam): rows are pairs (B, Gamma) with Gamma a lam-subset of the
  b-set B; a cell is a symbol exactly when A is disjoint from Gamma and
  B is contained in A|Gamma, keyed by (A|Gamma, A-B).

Symbol ids are ints assigned at first encounter in row-major order, so every
generator output is already canonically numbered.
"""

from __future__ import annotations

from itertools import combinations

from .combinat import RelaySet, difference, format_relays, intersection, ksubsets, union
from .model import STAR, Cell, PdaArray

SymbolKey = tuple[RelaySet, RelaySet]


def check_c1_params(h: int, r: int, b: int, lam: int) -> None:
    """Range checks shared by both naming variants; raises ValueError with a stable message."""
    if not 0 < r < h:
        raise ValueError(f"need 0 < r < H, got r={r}, H={h}")
    if not 0 < b < h:
        raise ValueError(f"need 0 < b < H, got b={b}, H={h}")
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    if lam > min(r, b):
        raise ValueError(f"need lambda <= min(r, b) = {min(r, b)}, got {lam}")
    if r + b - 2 * lam >= h:
        raise ValueError(f"need r + b - 2*lambda < H, got {r + b - 2 * lam} >= {h}")


def check_c2_params(h: int, r: int, b: int, lam: int) -> None:
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    if lam >= b:
        raise ValueError(f"need lambda < b, got lambda={lam}, b={b}")
    if not b < r + lam:
        raise ValueError(f"need b < r + lambda, got b={b}, r+lambda={r + lam}")
    if not r + lam < h:
        raise ValueError(f"need r + lambda < H, got {r + lam} >= {h}")


class _SymbolNamer:
    """Assigns 1-based ids to symbol keys at first encounter."""

    def __init__(self) -> None:
        self.ids: dict[SymbolKey, int] = {}

    def __call__(self, key: SymbolKey) -> int:
        if key not in self.ids:
            self.ids[key] = len(self.ids) + 1
        return self.ids[key]


def _c1_array(h: int, r: int, b: int, lam: int, prime: bool) -> PdaArray:
    check_c1_params(h, r, b, lam)
    cols = ksubsets(h, r)
    name = _SymbolNamer()
    rows: list[tuple[Cell, ...]] = []
    row_labels: list[str] = []
    for bb in ksubsets(h, b):
        row: list[Cell] = []
        for aa in cols:
            i = intersection(aa, bb)
            if len(i) != lam:
                row.append(STAR)
                continue
            body = difference(union(aa, bb), i)
            key = (body, difference(aa, bb) if prime else i)
            row.append(name(key))
        rows.append(tuple(row))
        row_labels.append(format_relays(bb))
    return PdaArray(h, r, tuple(cols), tuple(rows), tuple(row_labels))


def c1p(h: int, r: int, b: int, lam: int) -> PdaArray:
    """Variant keyed by ((A|B)-I, I); symbols repeat across choose(r+b-2*lam, r-lam) columns."""
    return _c1_array(h, r, b, lam, prime=False)


def c1pp(h: int, r: int, b: int, lam: int) -> PdaArray:
    """Variant keyed by ((A|B)-I, A-B); symbols repeat across choose(H-(r+b-2*lam), lam) columns."""
    return _c1_array(h, r, b, lam, prime=True)


def c2(h: int, r: int, b: int, lam: int) -> PdaArray:
    check_c2_params(h, r, b, lam)
    cols = ksubsets(h, r)
    name = _SymbolNamer()
    rows: list[tuple[Cell, ...]] = []
    row_labels: list[str] = []
    for bb in ksubsets(h, b):
        for gg in combinations(bb, lam):
            row: list[Cell] = []
            for aa in cols:
                if intersection(aa, gg) or not set(bb) <= set(union(aa, gg)):
                    row.append(STAR)
                    continue
                row.append(name((union(aa, gg), difference(aa, bb))))
            rows.append(tuple(row))
            row_labels.append(f"{format_relays(bb)}|{format_relays(gg)}")
    return PdaArray(h, r, tuple(cols), tuple(rows), tuple(row_labels))


def mn_pda(k: int, t: int) -> PdaArray:
    """Single-server array: rows are t-subsets of [k], column j stars rows containing j."""
    if not 0 < t < k:
        raise ValueError(f"need 0 < t < k, got t={t}, k={k}")
    tsets = ksubsets(k, t)
    rank = {s: i for i, s in enumerate(ksubsets(k, t + 1))}
    rows: list[tuple[Cell, ...]] = []
    for tt in tsets:
        row: list[Cell] = []
        for u in range(1, k + 1):
            if u in tt:
                row.append(STAR)
            else:
                row.append(rank[union(tt, (u,))] + 1)
        rows.append(tuple(row))
    cols = tuple((u,) for u in range(1, k + 1))
    return PdaArray(k, 1, cols, tuple(rows), tuple(format_relays(tt) for tt in tsets))


FAMILIES = ("c1p", "c1pp", "c2", "mn")


def build_family(family: str, *, h: int | None = None, r: int | None = None,
                 b: int | None = None, lam: int | None = None,
                 k: int | None = None, t: int | None = None) -> PdaArray:
    """Dispatch by family name; mn takes (k, t), the rest take (h, r, b, lam)."""
    if family == "mn":
        if k is None or t is None:
            raise ValueError("family mn needs k and t")
        return mn_pda(k, t)
    if family in ("c1p", "c1pp", "c2"):
        if h is None or r is None or b is None or lam is None:
            raise ValueError(f"family {family} needs H, r, b, lambda")
        fn = {"c1p": c1p, "c1pp": c1pp, "c2": c2}[family]
        return fn(h, r, b, lam)
    raise ValueError(f"unknown family {family!r}, expected one of {', '.join(FAMILIES)}")
