"""Block designs, pseudo designs and the constructions relating them.

Points are 0-indexed here; text and JSON I/O use 1-indexed labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .exactalg import IntMatrix


class DesignError(ValueError):
    pass


class ParameterError(DesignError):
    pass


@dataclass(frozen=True)
class Design:
    """``v`` points and a sorted tuple of sorted blocks (repeats allowed)."""

    v: int
    blocks: tuple

    def __init__(self, v: int, blocks: Iterable[Iterable[int]]):
        norm = []
        for b in blocks:
            blk = tuple(sorted(int(x) for x in b))
            if not blk:
                raise DesignError("empty block")
            if len(set(blk)) != len(blk):
                raise DesignError(f"repeated point in block {blk}")
            if blk[0] < 0 or blk[-1] >= v:
                raise DesignError(f"block {blk} leaves the point set 0..{v - 1}")
            norm.append(blk)
        object.__setattr__(self, "v", int(v))
        object.__setattr__(self, "blocks", tuple(sorted(norm)))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def incidence_matrix(self) -> IntMatrix:
        """Rows are blocks, columns are points."""
        return IntMatrix.from_rows(
            [[int(p in set(blk)) for p in range(self.v)] for blk in self.blocks], self.v)

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "Design":
        return cls(m.cols, [[j for j in range(m.cols) if m[i, j]] for i in range(m.rows)])

    def column_sums(self) -> list:
        sums = [0] * self.v
        for blk in self.blocks:
            for p in blk:
                sums[p] += 1
        return sums

    def relabel(self, perm: Sequence[int]) -> "Design":
        return Design(self.v, [[perm[p] for p in blk] for blk in self.blocks])

    def to_text(self) -> str:
        lines = [f"{self.v} {self.b}"]
        lines += [" ".join(str(p + 1) for p in blk) for blk in self.blocks]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Design":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 2:
            raise DesignError("first line must be 'v b'")
        v, b = (int(t) for t in lines[0])
        blocks = [[int(t) - 1 for t in ln] for ln in lines[1:]]
        if len(blocks) != b:
            raise DesignError(f"header announces {b} blocks, found {len(blocks)}")
        return cls(v, blocks)

    def to_json(self) -> str:
        return json.dumps({"v": self.v, "blocks": [[p + 1 for p in blk] for blk in self.blocks]})

    @classmethod
    def from_json(cls, text: str) -> "Design":
        data = json.loads(text)
        return cls(data["v"], [[p - 1 for p in blk] for blk in data["blocks"]])

    def label(self) -> str:
        """Compact notation, e.g. {124,235,...} (1-indexed)."""
        sep = "" if self.v < 10 else " "
        return "{" + ",".join(sep.join(str(p + 1) for p in blk) for blk in self.blocks) + "}"


def design_from_labels(v: int, blocks: Iterable[str]) -> Design:
    """Build from 1-indexed digit strings such as "124"."""
    return Design(v, [[int(ch) - 1 for ch in blk] for blk in blocks])


@dataclass(frozen=True)
class BibdParams:
    b: int
    v: int
    r: int
    k: int
    lam: int

    def __post_init__(self):
        b, v, r, k, lam = self.b, self.v, self.r, self.k, self.lam
        if min(b, v, r, k, lam) < 0:
            raise ParameterError(f"negative parameter in {self.astuple()}")
        if v * r != b * k:
            raise ParameterError(f"vr = bk fails: {v}*{r} != {b}*{k}")
        if r * (k - 1) != lam * (v - 1):
            raise ParameterError(f"r(k-1) = λ(v-1) fails: {r}*{k - 1} != {lam}*{v - 1}")
        if k > v - 1:
            raise ParameterError(f"k ≤ v-1 fails: k={k}, v={v}")

    def astuple(self) -> tuple:
        return (self.b, self.v, self.r, self.k, self.lam)

    @classmethod
    def symmetric(cls, v: int, k: int, lam: int) -> "BibdParams":
        return cls(v, v, k, k, lam)


@dataclass(frozen=True)
class PseudoParams:
    v: int
    k: int
    lam: int

    def __post_init__(self):
        if not 0 <= self.lam < self.k <= self.v - 1:
            raise ParameterError(
                f"0 ≤ λ < k ≤ v-1 fails for (v,k,λ)=({self.v},{self.k},{self.lam})")

    def astuple(self) -> tuple:
        return (self.v, self.k, self.lam)


def is_bibd(d: Design, p: BibdParams) -> bool:
    if d.v != p.v or d.b != p.b:
        return False
    if any(len(blk) != p.k for blk in d.blocks):
        return False
    if any(s != p.r for s in d.column_sums()):
        return False
    pairs: dict = {}
    for blk in d.blocks:
        for pr in combinations(blk, 2):
            pairs[pr] = pairs.get(pr, 0) + 1
    return all(pairs.get(pr, 0) == p.lam for pr in combinations(range(d.v), 2))


def is_pseudo(d: Design, p: PseudoParams) -> bool:
    if d.v != p.v or d.b != p.v - 1:
        return False
    if any(len(blk) != p.k for blk in d.blocks):
        return False
    sets = [set(blk) for blk in d.blocks]
    return all(len(a & b) == p.lam for a, b in combinations(sets, 2))


def is_primary(p: PseudoParams) -> bool:
    return p.v * p.lam != p.k * p.k


def nonprimary_shape(p: PseudoParams) -> bool:
    """The equivalent form of nonprimarity: v = 4λ and k = 2λ."""
    return p.v == 4 * p.lam and p.k == 2 * p.lam


FANO_LABELS = ("124", "235", "346", "457", "561", "672", "713")


def fano() -> Design:
    return design_from_labels(7, FANO_LABELS)


def complement_design(d: Design) -> Design:
    full = set(range(d.v))
    return Design(d.v, [sorted(full - set(blk)) for blk in d.blocks])


def remove_block(d: Design, i: int) -> Design:
    if not 0 <= i < d.b:
        raise IndexError(f"block index {i} out of range 0..{d.b - 1}")
    return Design(d.v, d.blocks[:i] + d.blocks[i + 1:])


def add_point(d: Design, to_blocks: Iterable[int]) -> Design:
    """Append point ``v`` and put it in the listed blocks."""
    chosen = set(to_blocks)
    return Design(d.v + 1, [blk + ((d.v,) if i in chosen else ()) for i, blk in enumerate(d.blocks)])


def symmetric_params(d: Design) -> tuple | None:
    """(v, k, λ) if d is a symmetric design, else None."""
    if d.b != d.v or not d.blocks:
        return None
    k = len(d.blocks[0])
    if d.v < 2:
        return None
    lam, rem = divmod(k * (k - 1), d.v - 1)
    if rem or k > d.v - 1:
        return None
    if not is_bibd(d, BibdParams.symmetric(d.v, k, lam)):
        return None
    return (d.v, k, lam)


def marrero_butson(hadamard: Design, complement_rows: Iterable[int] = ()) -> Design:
    """Pseudo (4λ, 2λ, λ)-design from a (4λ-1, 2λ-1, λ-1)-design: add a point
    to every block, then complement the chosen blocks in the enlarged set."""
    sp = symmetric_params(hadamard)
    if sp is None or sp[0] + 1 != 4 * (sp[2] + 1) or sp[1] + 1 != 2 * (sp[2] + 1):
        raise ParameterError("input is not a (4λ-1, 2λ-1, λ-1)-design")
    rows = set(complement_rows)
    if any(not 0 <= i < hadamard.b for i in rows):
        raise IndexError("complement row index out of range")
    v = hadamard.v + 1
    full = set(range(v))
    blocks = []
    for i, blk in enumerate(hadamard.blocks):
        nb = set(blk) | {hadamard.v}
        blocks.append(sorted(full - nb) if i in rows else sorted(nb))
    return Design(v, blocks)


def _parent(parent: Design, clause: str) -> tuple:
    sp = symmetric_params(parent)
    if sp is None:
        raise ParameterError(
            f"clause ({clause}) needs a symmetric parent design: "
            "b = v, constant block size and k(k-1) = λ(v-1) with every pair in λ blocks")
    return sp


def _check(cond: bool, clause: str, text: str):
    if not cond:
        raise ParameterError(f"clause ({clause}) arithmetic condition fails: {text}")


def complete_i(parent: Design) -> Design:
    """Adjoin a column of 1's to a (v-1, k-1, λ-1)-design."""
    pv, pk, pl = _parent(parent, "i")
    v, k, lam = pv + 1, pk + 1, pl + 1
    _check((k - 1) * (k - 2) == (lam - 1) * (v - 2), "i", "(k-1)(k-2) = (λ-1)(v-2)")
    return add_point(parent, range(parent.b))


def complete_ii(parent: Design) -> Design:
    """Adjoin a column of 0's to a (v-1, k, λ)-design."""
    pv, k, lam = _parent(parent, "ii")
    v = pv + 1
    _check(k * (k - 1) == lam * (v - 2), "ii", "k(k-1) = λ(v-2)")
    return add_point(parent, ())


def complete_iii(parent: Design, row: int = 0) -> Design:
    """Discard one block of a (v, k, λ)-design."""
    v, k, lam = _parent(parent, "iii")
    _check(k * (k - 1) == lam * (v - 1), "iii", "k(k-1) = λ(v-1)")
    return remove_block(parent, row)


def complete_iv(parent: Design, row: int = 0) -> Design:
    """Discard block ``row`` of a symmetric design and complement the columns
    (points) that lay in it."""
    v, pk, pl = _parent(parent, "iv")
    k, lam = 2 * (pk - pl), pk - pl
    _check(k == 2 * lam, "iv", "k = 2λ")
    if not 0 <= row < parent.b:
        raise IndexError(f"block index {row} out of range")
    flip = set(parent.blocks[row])
    rest = parent.blocks[:row] + parent.blocks[row + 1:]
    return Design(v, [sorted(set(blk) ^ flip) for blk in rest])


def marrero_conditions(p: PseudoParams) -> list:
    """Clauses (i)-(iv) whose arithmetic condition holds for primary p."""
    if not is_primary(p):
        raise ParameterError(f"{p.astuple()} is nonprimary (vλ = k²)")
    v, k, lam = p.astuple()
    out = []
    if (k - 1) * (k - 2) == (lam - 1) * (v - 2):
        out.append("i")
    if k * (k - 1) == lam * (v - 2):
        out.append("ii")
    if k * (k - 1) == lam * (v - 1):
        out.append("iii")
    if k == 2 * lam:
        out.append("iv")
    return out


@dataclass(frozen=True)
class PrimarySplit:
    M: Design
    N: Design
    f: int
    y: int
    s1: int
    s2: int
    columns: tuple  # original point indices: the f columns of M, then those of N
    M_params: tuple  # (b, v, r, k, λ) of each part
    N_params: tuple


def _part_ok(part: Design, params: tuple) -> bool:
    b, v, r, k, lam = params
    if v == 1:
        # one-column part: all-ones or all-zeros column, accepted as degenerate
        return part.column_sums() == [r] and r == b * k
    try:
        return is_bibd(part, BibdParams(*params))
    except ParameterError:
        return False


def _restrict(d: Design, cols: Sequence[int]) -> list:
    index = {c: j for j, c in enumerate(cols)}
    return [[index[p] for p in blk if p in index] for blk in d.blocks]


def split_primary(d: Design) -> PrimarySplit:
    """Split the incidence matrix of a primary pseudo design into its two
    BIBD parts by column sum."""
    v = d.v
    if d.b != v - 1 or len({len(blk) for blk in d.blocks}) != 1:
        raise ParameterError("input is not a pseudo design")
    k = len(d.blocks[0])
    inter = {len(set(a) & set(b)) for a, b in combinations(d.blocks, 2)}
    if len(inter) != 1:
        raise ParameterError("blocks do not meet in a constant number of points")
    lam = inter.pop()
    p = PseudoParams(v, k, lam)
    if not is_primary(p):
        raise ParameterError(f"{p.astuple()} is nonprimary (vλ = k²)")
    sums = d.column_sums()
    distinct = sorted(set(sums))
    if len(distinct) > 2:
        raise ParameterError(
            f"incidence matrix has column sums {distinct}: a primary pseudo design has at most two")
    if len(distinct) == 1:
        s1 = s2 = distinct[0]
        cols1, cols2, y = list(range(v)), [], k
    else:
        a, b_ = distinct
        na, nb = sums.count(a), sums.count(b_)
        # s1 is the sum carried by more columns (ties: the larger sum)
        s1, s2 = (a, b_) if na > nb else (b_, a)
        num = k + lam * (v - 2) - k * s2
        y, rem = divmod(num, s1 - s2)
        if rem:
            raise ArithmeticError(f"y = {num}/{s1 - s2} is not an integer")
        cols1 = [j for j in range(v) if sums[j] == s1]
        cols2 = [j for j in range(v) if sums[j] == s2]
    f = len(cols1)
    rows1 = _restrict(d, cols1)
    rows2 = _restrict(d, cols2)
    m_params = (v - 1, f, s1, y, s1 - k + lam)
    n_params = (v - 1, v - f, s2, k - y, s2 - k + lam)
    if any(len(r) != y for r in rows1) or any(len(r) != k - y for r in rows2):
        raise ArithmeticError("row sums of the split disagree with y")
    M = _part_design(f, rows1)
    N = _part_design(v - f, rows2)
    if f and not _part_ok(M, m_params):
        raise ArithmeticError(f"M fails to be a BIBD{m_params}")
    if v - f and not _part_ok(N, n_params):
        raise ArithmeticError(f"N fails to be a BIBD{n_params}")
    return PrimarySplit(M, N, f, y, s1, s2, tuple(cols1 + cols2), m_params, n_params)


def _part_design(v: int, rows: list) -> Design:
    """Design whose blocks may be empty (a zero row of a split part); rows
    keep the order of the parent so that M and N stay aligned."""
    # bypasses __init__, which rejects empty blocks and sorts them
    d = object.__new__(Design)
    object.__setattr__(d, "v", v)
    object.__setattr__(d, "blocks", tuple(tuple(sorted(r)) for r in rows))
    return d


NAMED_PSEUDO = {
    "D1": ("1238", "1458", "1678", "3578", "2478", "3468", "2568"),
    "D2": ("4567", "1458", "1678", "3578", "2478", "3468", "2568"),
    "D3": ("4567", "2367", "1678", "3578", "2478", "3468", "2568"),
    "D4": ("4567", "2367", "2345", "3578", "2478", "3468", "2568"),
}


def named_pseudo(name: str) -> Design:
    if name not in NAMED_PSEUDO:
        raise KeyError(f"unknown pseudo design {name!r}; expected one of D1..D4")
    return design_from_labels(8, NAMED_PSEUDO[name])


def hadamard_3() -> Design:
    """The (3,1,0)-design, incidence matrix I_3."""
    return Design(3, [[0], [1], [2]])


# a (7,4,2)-design; complete_iv of the complement of the Fano plane is it minus a block
FULL_742_LABELS = ("3567", "1467", "1257", "1236", "2347", "1345", "2456")
