"""Atomicity decided from mu class indices alone.

For an odd prime n, an integer's *signature* records how many of its
prime factors (with multiplicity) fall in each mu class: ``zero_count``
for multiples of n and ``counts[i]`` for unit index ``i``.  Grouping the
prime factors into blocks multiplies their classes, i.e. adds indices
mod q, and any block holding a multiple of n lands in the zero class.
So x is reducible iff its index multiset splits into two or more blocks
that all land in one class, and that question only depends on the
signature.

Search for the zero-free case.  Write ``S`` for the index total and
``t`` for the common block class.  A split into ``k >= 2`` blocks of
class ``t`` exists iff there are ``k`` *disjoint* sub-multisets of class
``t`` with ``k*t = S (mod q)``: the leftover then has class 0 and folds
into any block.  Dropping whole blocks in groups of ``q / gcd(t, q)``
keeps that congruence, so only the least such ``k`` needs trying, and a
block can always be shrunk until it has no nonempty class-0 proper
sub-multiset, which caps its size at ``q``.
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .arith import factor
from .errors import TableTooLargeError, UnitInputError
from .relations import ZERO, ClassTable, MuClassIndex, build_class_table

TABLE_SCHEMA = "tauatoms.atom-table/1"
DEFAULT_TABLE_CAP = 10**6
CACHE_ENV = "TAUATOMS_CACHE_DIR"


@dataclass(frozen=True)
class Signature:
    q: int
    zero_count: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 1 or len(self.counts) != self.q:
            raise ValueError(f"counts must have length q={self.q}")
        if self.zero_count < 0 or any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @classmethod
    def of(cls, q: int, counts: Mapping[int, int] | None = None, zero: int = 0) -> Signature:
        vec = [0] * q
        for i, c in (counts or {}).items():
            if not 0 <= i < q:
                raise ValueError(f"index {i} outside [0, {q})")
            vec[i] += c
        return cls(q, zero, tuple(vec))

    @property
    def total(self) -> int:
        return self.zero_count + sum(self.counts)

    @property
    def x0_count(self) -> int:
        return self.counts[0]

    def unit_counts(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.counts) if c}

    def indices(self) -> list[MuClassIndex]:
        out = [ZERO] * self.zero_count
        for i, c in enumerate(self.counts):
            out.extend([MuClassIndex(i)] * c)
        return out

    def sort_key(self) -> tuple:
        return (self.zero_count, self.total, self.counts)

    def __add__(self, other: Signature) -> Signature:
        if self.q != other.q:
            raise ValueError("signatures have different q")
        return Signature(
            self.q,
            self.zero_count + other.zero_count,
            tuple(a + b for a, b in zip(self.counts, other.counts)),
        )

    def __sub__(self, other: Signature) -> Signature:
        return Signature(
            self.q,
            self.zero_count - other.zero_count,
            tuple(a - b for a, b in zip(self.counts, other.counts)),
        )

    def label(self) -> str:
        """Product notation such as ``x1*x4^2``; ``1`` for the empty signature."""
        terms = [f"z^{self.zero_count}" if self.zero_count > 1 else "z"] if self.zero_count else []
        for i, c in enumerate(self.counts):
            if c:
                terms.append(f"x{i}^{c}" if c > 1 else f"x{i}")
        return "*".join(terms) or "1"

    @classmethod
    def parse(cls, text: str, q: int) -> Signature:
        """Inverse of :meth:`label`: ``"x1*x4^2"``, ``"z*x0^3*x2"``, ``"1"``."""
        text = text.replace(" ", "")
        counts: dict[int, int] = {}
        zero = 0
        if text in ("", "1"):
            return cls.of(q)
        for term in text.split("*"):
            name, _, power = term.partition("^")
            c = int(power) if power else 1
            if name == "z":
                zero += c
            elif name.startswith("x") and name[1:].isdigit():
                i = int(name[1:])
                counts[i] = counts.get(i, 0) + c
            else:
                raise ValueError(f"cannot parse signature term {term!r}")
        return cls.of(q, counts, zero)

    def to_dict(self) -> dict:
        return {"zero": self.zero_count, "counts": {str(i): c for i, c in enumerate(self.counts) if c}}

    @classmethod
    def from_dict(cls, q: int, data: Mapping) -> Signature:
        return cls.of(q, {int(i): c for i, c in data.get("counts", {}).items()}, data.get("zero", 0))


def signature_of(x: int, t: ClassTable) -> Signature:
    """Class-index multiset of the prime factors of ``|x|``."""
    if abs(x) < 2:
        raise UnitInputError(f"{x} has no prime factors")
    zero, vec = 0, [0] * t.q
    for p, e in factor(x).factors:
        i = t.raw_index(p)
        if i < 0:
            zero += e
        else:
            vec[i] += e
    return Signature(t.q, zero, tuple(vec))


def block_class(block: Iterable[MuClassIndex], t: ClassTable | int) -> MuClassIndex:
    q = t.q if isinstance(t, ClassTable) else t
    total = 0
    empty = True
    for c in block:
        empty = False
        if c.is_zero:
            return ZERO
        total += c.index
    if empty:
        raise ValueError("a block must be nonempty")
    return MuClassIndex(total % q)


def signature_class(s: Signature) -> MuClassIndex:
    if s.zero_count:
        return ZERO
    return MuClassIndex(sum(i * c for i, c in enumerate(s.counts)) % s.q)


class Verdict(enum.Enum):
    ATOM = "atom"
    REDUCIBLE = "reducible"
    # the empty signature: its product is a unit, neither atom nor reducible
    UNIT = "unit"


@dataclass(frozen=True)
class SignatureVerdict:
    verdict: Verdict
    witness: tuple[Signature, ...] | None = None

    @property
    def is_atom(self) -> bool:
        return self.verdict is Verdict.ATOM

    def witness_label(self) -> str:
        if not self.witness:
            return ""
        return "".join(f"({b.label()})" for b in self.witness)


def _blocks_with_class(counts: tuple[int, ...], q: int, t: int) -> list[tuple[int, ...]]:
    """Candidate blocks of class ``t``: nonzero-index sub-multisets of size at most
    q (q - 1 when t != 0), plus the lone x0 factor when t == 0."""
    if t == 0 and counts[0]:
        found = [(1,) + (0,) * (q - 1)]
    else:
        found = []
    limit = q if t == 0 else q - 1
    vec = [0] * q

    def walk(i: int, size: int, acc: int) -> None:
        if i == q:
            if size and acc == t:
                found.append(tuple(vec))
            return
        top = min(counts[i], limit - size)
        for c in range(top + 1):
            vec[i] = c
            walk(i + 1, size + c, (acc + c * i) % q)
        vec[i] = 0

    walk(1, 0, 0)
    return found


@lru_cache(maxsize=1 << 20)
def _pack(counts: tuple[int, ...], q: int, t: int, need: int) -> tuple[tuple[int, ...], ...] | None:
    """``need`` disjoint blocks of class ``t`` inside ``counts``, or None."""
    if need == 0:
        return ()
    for block in _blocks_with_class(counts, q, t):
        rest = tuple(a - b for a, b in zip(counts, block))
        tail = _pack(rest, q, t, need - 1)
        if tail is not None:
            return (block,) + tail
    return None


def _least_block_count(q: int, t: int, total: int) -> int | None:
    for k in range(2, q + 2):
        if (k * t - total) % q == 0:
            return k
    return None


def _unit_split(counts: tuple[int, ...], q: int) -> list[tuple[int, ...]] | None:
    total = sum(i * c for i, c in enumerate(counts)) % q
    for t in range(q):
        k = _least_block_count(q, t, total)
        if k is None or k > sum(counts):
            continue
        blocks = _pack(counts, q, t, k)
        if blocks is not None:
            used = [sum(col) for col in zip(*blocks)]
            leftover = tuple(c - u for c, u in zip(counts, used))
            first = tuple(a + b for a, b in zip(blocks[0], leftover))
            return [first, *blocks[1:]]
    return None


def signature_is_atom(s: Signature) -> SignatureVerdict:
    """Atom, or Reducible with a witness split into equal-class blocks."""
    if s.total == 0:
        return SignatureVerdict(Verdict.UNIT)
    if s.total == 1:
        return SignatureVerdict(Verdict.ATOM)
    if s.zero_count >= 2:
        lone = Signature(s.q, 1, (0,) * s.q)
        return SignatureVerdict(Verdict.REDUCIBLE, (s - lone, lone))
    if s.zero_count == 1:
        # exactly one block can hold the zero-class factor
        return SignatureVerdict(Verdict.ATOM)
    split = _unit_split(s.counts, s.q)
    if split is None:
        return SignatureVerdict(Verdict.ATOM)
    blocks = tuple(Signature(s.q, 0, b) for b in split)
    return SignatureVerdict(Verdict.REDUCIBLE, tuple(sorted(blocks, key=Signature.sort_key, reverse=True)))


def witness_is_valid(s: Signature, witness: Iterable[Signature]) -> bool:
    """Do the blocks partition ``s`` into two or more nonempty blocks of one class?"""
    blocks = list(witness)
    if len(blocks) < 2 or any(b.total == 0 or b.q != s.q for b in blocks):
        return False
    merged = blocks[0]
    for b in blocks[1:]:
        merged = merged + b
    if merged != s:
        return False
    return len({signature_class(b) for b in blocks}) == 1


@dataclass(frozen=True)
class AtomTable:
    n: int
    q: int
    max_per_class: int
    x0_levels: tuple[int, ...]
    entries: dict[Signature, SignatureVerdict]

    def __len__(self) -> int:
        return len(self.entries)


def table_size(n: int, max_per_class: int, x0_levels: Iterable[int]) -> int:
    q = build_class_table(n).q
    return (max_per_class + 1) ** (q - 1) * len(set(x0_levels))


def iter_table_signatures(n: int, max_per_class: int, x0_levels: Iterable[int] = (0,)) -> Iterator[Signature]:
    """Zero-free signatures with at most ``max_per_class`` factors per nonzero index."""
    q = build_class_table(n).q
    for level in sorted(set(x0_levels)):
        for rest in itertools.product(range(max_per_class + 1), repeat=q - 1):
            yield Signature(q, 0, (level,) + rest)


def iter_atom_table(
    n: int, max_per_class: int, x0_levels: Iterable[int] = (0,), cap: int = DEFAULT_TABLE_CAP
) -> Iterator[tuple[Signature, SignatureVerdict]]:
    if max_per_class < 1:
        raise ValueError("max_per_class must be >= 1")
    levels = tuple(sorted(set(x0_levels)))
    if not levels or any(lv < 0 for lv in levels):
        raise ValueError("x0_levels must be a nonempty set of nonnegative counts")
    size = table_size(n, max_per_class, levels)
    if size > cap:
        raise TableTooLargeError(f"{size} entries exceeds the cap of {cap}")
    for sig in iter_table_signatures(n, max_per_class, levels):
        yield sig, signature_is_atom(sig)


def generate_atom_table(
    n: int, max_per_class: int, x0_levels: Iterable[int] = (0,), cap: int = DEFAULT_TABLE_CAP
) -> AtomTable:
    levels = tuple(sorted(set(x0_levels)))
    entries = dict(iter_atom_table(n, max_per_class, levels, cap))
    return AtomTable(n, build_class_table(n).q, max_per_class, levels, entries)


def atoms_in_table(t: AtomTable) -> list[Signature]:
    return sorted((s for s, v in t.entries.items() if v.is_atom), key=Signature.sort_key)


# -- serialization -----------------------------------------------------------


def _block_labels(b: Signature) -> list[str]:
    return ["z"] * b.zero_count + [f"x{i}" for i, c in enumerate(b.counts) for _ in range(c)]


def entry_to_dict(sig: Signature, v: SignatureVerdict) -> dict:
    return {
        "signature": sig.to_dict(),
        "verdict": v.verdict.value,
        "witness": None if v.witness is None else [_block_labels(b) for b in v.witness],
    }


def table_header(n: int, max_per_class: int, x0_levels: Iterable[int]) -> dict:
    ct = build_class_table(n)
    return {
        "schema": TABLE_SCHEMA,
        "n": n,
        "q": ct.q,
        "base": ct.base,
        "max_per_class": max_per_class,
        "x0_levels": sorted(set(x0_levels)),
    }


def write_table_json(rows: Iterable[tuple[Signature, SignatureVerdict]], header: dict, out: io.TextIOBase) -> int:
    """Stream a table as one JSON document; returns the number of entries."""
    head = json.dumps(header)
    out.write(head[:-1] + ', "entries": [')
    count = 0
    for sig, v in rows:
        out.write(("\n" if count == 0 else ",\n") + json.dumps(entry_to_dict(sig, v)))
        count += 1
    out.write("\n]}\n")
    return count


def csv_columns(q: int) -> list[str]:
    return ["n", "zero"] + [f"x{i}" for i in range(q)] + ["total", "verdict", "witness"]


def write_table_csv(rows: Iterable[tuple[Signature, SignatureVerdict]], n: int, out: io.TextIOBase) -> int:
    q = build_class_table(n).q
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(csv_columns(q))
    count = 0
    for sig, v in rows:
        writer.writerow([n, sig.zero_count, *sig.counts, sig.total, v.verdict.value, v.witness_label()])
        count += 1
    return count


def read_table_json(data: str | Mapping) -> AtomTable:
    doc = json.loads(data) if isinstance(data, str) else data
    if doc.get("schema") != TABLE_SCHEMA:
        raise ValueError(f"unexpected schema {doc.get('schema')!r}")
    q = doc["q"]
    entries: dict[Signature, SignatureVerdict] = {}
    for row in doc["entries"]:
        sig = Signature.from_dict(q, row["signature"])
        witness = None
        if row["witness"] is not None:
            witness = tuple(_block_from_labels(q, b) for b in row["witness"])
        entries[sig] = SignatureVerdict(Verdict(row["verdict"]), witness)
    return AtomTable(doc["n"], q, doc["max_per_class"], tuple(doc["x0_levels"]), entries)


def _block_from_labels(q: int, labels: list[str]) -> Signature:
    zero = sum(1 for lab in labels if lab == "z")
    counts: dict[int, int] = {}
    for lab in labels:
        if lab != "z":
            i = int(lab[1:])
            counts[i] = counts.get(i, 0) + 1
    return Signature.of(q, counts, zero)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "tauatoms"


def table_cache_path(cache_dir: Path, n: int, max_per_class: int, x0_levels: Iterable[int]) -> Path:
    levels = "-".join(str(lv) for lv in sorted(set(x0_levels)))
    return Path(cache_dir) / f"atom-table-n{n}-m{max_per_class}-x0_{levels}.json"


def load_or_generate_table(
    n: int, max_per_class: int, x0_levels: Iterable[int] = (0,), cache_dir: Path | None = None
) -> AtomTable:
    """Read a cached table if present, otherwise build it and write the cache."""
    levels = tuple(sorted(set(x0_levels)))
    path = table_cache_path(cache_dir or default_cache_dir(), n, max_per_class, levels)
    if path.exists():
        return read_table_json(path.read_text())
    table = generate_atom_table(n, max_per_class, levels)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        write_table_json(table.entries.items(), table_header(n, max_per_class, levels), fh)
    return table
