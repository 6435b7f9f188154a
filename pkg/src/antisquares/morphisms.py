"""Morphism engine: apply/iterate/fixed points, the named morphism registry,
and the three verification procedures for the uniform ternary-to-binary
constructions (synchronization, image power-freeness, complement-factor
bound with antisquare inventory).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Optional

from .antisquares import AntisquareInventory, inventory
from .repetitions import PowerBound, satisfies
from .words import Word, complement_text, factor_texts


class RegistryError(Exception):
    """Registry data file missing, malformed, or failing its checksums."""


class StabilizationError(Exception):
    """A stabilization search exceeded its budget without settling."""


@dataclass(frozen=True)
class Morphism:
    """A letter-to-word map.  images[a] is the image of letter a."""

    images: tuple[str, ...]
    target_alphabet: int = 2

    def __post_init__(self):
        if not self.images or any(not im for im in self.images):
            raise ValueError("all images must be nonempty")

    @property
    def domain_alphabet(self) -> int:
        return len(self.images)

    @property
    def uniform_length(self) -> Optional[int]:
        sizes = {len(im) for im in self.images}
        return sizes.pop() if len(sizes) == 1 else None

    def prolongable_on(self, letter: int) -> bool:
        im = self.images[letter]
        return len(im) >= 2 and im[0] == str(letter)

    def apply_text(self, text: str) -> str:
        images = self.images
        return "".join(images[ord(c) - 48] for c in text)


def apply(m: Morphism, w: Word) -> Word:
    """Concatenation of the letter images of w."""
    for a in set(w.text):
        if ord(a) - 48 >= m.domain_alphabet:
            raise ValueError(f"letter {a} outside morphism domain")
    return Word(m.apply_text(w.text), m.target_alphabet)


def fixed_point_prefix(m: Morphism, seed: int, min_length: int) -> Word:
    """A prefix of length >= min_length of the unique fixed point of m
    starting with the seed letter.  Prefix-stable: longer requests only
    extend the result."""
    if not m.prolongable_on(seed):
        raise ValueError(f"morphism is not prolongable on letter {seed}")
    text = str(seed)
    while len(text) < min_length:
        text = m.apply_text(text)
    return Word(text, m.target_alphabet)


def is_synchronizing(m: Morphism) -> bool:
    """A uniform morphism with image length q is synchronizing if every
    occurrence of an image inside a two-image concatenation is at position
    0 or q."""
    q = m.uniform_length
    if q is None:
        raise ValueError("synchronization is only defined for uniform morphisms")
    for a in m.images:
        for b in m.images:
            for c in m.images:
                hay = b + c
                pos = hay.find(a)
                while pos != -1:
                    if pos not in (0, q):
                        return False
                    pos = hay.find(a, pos + 1)
    return True


def squarefree_ternary_words(length: int) -> Iterator[Word]:
    """All squarefree ternary words of the given length, lexicographically.

    Backtracking generation; appending a letter can only create squares that
    are suffixes, so only suffix squares are checked at each step.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        yield Word("", 3)
        return

    def extend(prefix: list[str]) -> Iterator[Word]:
        if len(prefix) == length:
            yield Word("".join(prefix), 3)
            return
        for c in "012":
            prefix.append(c)
            n = len(prefix)
            ok = True
            for p in range(1, n // 2 + 1):
                if prefix[n - 2 * p : n - p] == prefix[n - p :]:
                    ok = False
                    break
            if ok:
                yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def image_power_check(m: Morphism, bound: PowerBound, t: int) -> bool:
    """True iff the image of every squarefree ternary word of length t
    satisfies the bound."""
    if m.domain_alphabet != 3:
        raise ValueError("image_power_check expects a ternary-domain morphism")
    for u in squarefree_ternary_words(t):
        ok, _ = satisfies(apply(m, u), bound)
        if not ok:
            return False
    return True


def _complement_pair_bound_many(texts: list[str]) -> int:
    """Largest L with some v of length L and its complement both occurring as
    factors of (possibly different) words in texts."""
    m = 0
    length = 1
    while True:
        facs: set[str] = set()
        for t in texts:
            if len(t) >= length:
                facs |= factor_texts(t, length)
        if not facs or not any(complement_text(v) in facs for v in facs):
            return m
        m = length
        length += 1


def complement_factor_bound(m: Morphism, settle_t: int = 4, max_t: int = 24) -> int:
    """Stabilized maximum |v| such that v and its complement both occur in
    images of squarefree ternary words.

    Evaluated over squarefree test words of length T = 4, 5, ...; stops once
    the bound is unchanged for 3 consecutive T with T >= settle_t.  Raises
    StabilizationError if it does not settle by T = max_t.
    """
    if m.domain_alphabet != 3:
        raise ValueError("complement_factor_bound expects a ternary-domain morphism")
    prev = None
    stable = 0
    for T in range(4, max_t + 1):
        texts = [m.apply_text(u.text) for u in squarefree_ternary_words(T)]
        bound = _complement_pair_bound_many(texts)
        if bound == prev:
            stable += 1
        else:
            prev, stable = bound, 1
        if stable >= 3 and T >= settle_t:
            return bound
    raise StabilizationError(f"complement factor bound did not settle by T={max_t}")


def morphic_antisquare_inventory(m: Morphism, window: int) -> AntisquareInventory:
    """Distinct antisquares occurring in images of squarefree ternary words,
    collected from factors of length <= window.

    For a synchronizing morphism, factors of length <= window are covered by
    images of squarefree words of length ceil(window/q) + 2.
    """
    q = m.uniform_length
    if q is None:
        raise ValueError("expected a uniform morphism")
    tlen = -(-window // q) + 2
    combined = AntisquareInventory()
    for u in squarefree_ternary_words(tlen):
        inv = inventory(apply(m, u))
        for a in inv.distinct:
            if len(a) <= window:
                combined.distinct.add(a)
    return combined


@dataclass(frozen=True)
class MorphismRegistryEntry:
    name: str
    morphism: Morphism
    source: str
    checksum: str


@dataclass
class MorphismCheckReport:
    """Results of the three verification checks for one uniform construction."""

    name: str
    synchronizing: bool
    image_bound_ok: bool
    t_used: int
    complement_bound: int
    inventory: AntisquareInventory

    def render(self) -> str:
        lines = [
            f"morphism: {self.name}",
            f"synchronizing: {self.synchronizing}",
            f"image_bound_ok: {self.image_bound_ok} (t={self.t_used})",
            f"complement_factor_bound: {self.complement_bound}",
            f"antisquare_count: {self.inventory.count}",
            f"antisquare_max_order: {self.inventory.max_order}",
        ]
        return "\n".join(lines)


def _image_checksum(images: tuple[str, ...]) -> str:
    return hashlib.sha256("\n".join(images).encode("ascii")).hexdigest()


def load_registry() -> dict[str, MorphismRegistryEntry]:
    """Load the named-morphism registry from the packaged data file,
    verifying the per-entry image checksums."""
    text = resources.files("antisquares").joinpath("data/registry.txt").read_text()
    registry: dict[str, MorphismRegistryEntry] = {}
    name = None
    images: dict[int, str] = {}
    source = ""
    checksum = ""
    binary_target = True

    def flush():
        nonlocal name, images, source, checksum, binary_target
        if name is None:
            return
        ordered = tuple(images[a] for a in sorted(images))
        if len(ordered) != len(images) or sorted(images) != list(range(len(images))):
            raise RegistryError(f"entry {name}: images must cover letters 0..k-1")
        actual = _image_checksum(ordered)
        if actual != checksum:
            raise RegistryError(f"entry {name}: checksum mismatch (registry file modified?)")
        target = 3 if any(("2" in im) for im in ordered) else 2
        registry[name] = MorphismRegistryEntry(
            name, Morphism(ordered, target_alphabet=target), source, checksum
        )
        name, images, source, checksum = None, {}, "", ""

    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            flush()
            continue
        if line.startswith("# source:"):
            source = line[len("# source:") :].strip()
        elif line.startswith("# sha256:"):
            checksum = line[len("# sha256:") :].strip()
        elif line.endswith(":"):
            flush()
            name = line[:-1].strip()
        elif "->" in line:
            letter, image = line.split("->")
            images[int(letter.strip())] = image.strip()
        else:
            raise RegistryError(f"unparsable registry line: {raw!r}")
    flush()
    return registry


# Published verification parameters for the uniform constructions:
# (constraint kind, cap, power bound, t, expected complement bound m).
# "order" caps the antisquare order (strictly below cap); "count" caps the
# number of distinct antisquares (at most cap).
VERIFICATION_PARAMS: dict[str, dict] = {
    "xi3": dict(kind="order", cap=3, bound="8/3+", t=8, m=6),
    "xi5": dict(kind="order", cap=5, bound="5/2+", t=10, m=16),
    "xi6": dict(kind="order", cap=6, bound="7/3+", t=14, m=26),
    "zeta3": dict(kind="count", cap=3, bound="3+", t=6, m=4),
    "zeta6": dict(kind="count", cap=6, bound="8/3+", t=8, m=6),
    "zeta9": dict(kind="count", cap=9, bound="38/15+", t=9, m=17),
    "zeta10": dict(kind="count", cap=10, bound="5/2+", t=10, m=17),
    "zeta15": dict(kind="count", cap=15, bound="17/7+", t=11, m=12),
    "zeta16": dict(kind="count", cap=16, bound="7/3+", t=14, m=13),
}

# Published uniform image lengths.
UNIFORM_LENGTHS: dict[str, int] = {
    "xi3": 36,
    "xi5": 19,
    "xi6": 37,
    "zeta3": 13,
    "zeta6": 36,
    "zeta9": 192,
    "zeta10": 75,
    "zeta15": 194,
    "zeta16": 192,
}


def verify_construction(name: str, registry=None) -> MorphismCheckReport:
    """Run all three checks for one registered uniform construction."""
    params = VERIFICATION_PARAMS[name]
    registry = registry if registry is not None else load_registry()
    m = registry[name].morphism
    bound = PowerBound.parse(params["bound"])
    sync = is_synchronizing(m)
    ok_images = image_power_check(m, bound, params["t"])
    cb = complement_factor_bound(m, settle_t=params["t"])
    inv = morphic_antisquare_inventory(m, 2 * cb)
    return MorphismCheckReport(name, sync, ok_images, params["t"], cb, inv)
