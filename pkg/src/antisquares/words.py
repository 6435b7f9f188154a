"""Finite words over alphabets {0,1} and {0,1,2}, plus elementary block combinatorics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

_COMPLEMENT_TABLE = str.maketrans("01", "10")

LettersLike = Union[str, "Word", Iterable[int]]


class Word:
    """An immutable finite word over a fixed alphabet {0, ..., alphabet_size-1}.

    Letters are stored as a string of ASCII digits, which keeps hashing,
    slicing and factor extraction cheap.  The alphabet size is explicit
    state: a ternary word need not use all three letters.
    """

    __slots__ = ("text", "alphabet_size", "_arr")

    def __init__(self, letters: LettersLike = "", alphabet_size: int = 2):
        if isinstance(letters, Word):
            text = letters.text
        elif isinstance(letters, str):
            text = letters
        else:
            text = "".join(str(a) for a in letters)
        if alphabet_size not in (2, 3):
            raise ValueError(f"alphabet_size must be 2 or 3, got {alphabet_size}")
        limit = chr(ord("0") + alphabet_size)
        for ch in text:
            if not ("0" <= ch < limit):
                raise ValueError(f"letter {ch!r} out of range for alphabet size {alphabet_size}")
        self.text = text
        self.alphabet_size = alphabet_size
        self._arr = None

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(ord(c) - 48 for c in self.text)

    def array(self) -> np.ndarray:
        """Letters as a read-only uint8 numpy array (cached)."""
        if self._arr is None:
            arr = np.frombuffer(self.text.encode("ascii"), dtype=np.uint8) - 48
            arr.flags.writeable = False
            self._arr = arr
        return self._arr

    def __len__(self) -> int:
        return len(self.text)

    def __iter__(self) -> Iterator[int]:
        return (ord(c) - 48 for c in self.text)

    def __getitem__(self, i) -> "Word | int":
        if isinstance(i, slice):
            return Word(self.text[i], self.alphabet_size)
        return ord(self.text[i]) - 48

    def __add__(self, other: "Word") -> "Word":
        return Word(self.text + other.text, max(self.alphabet_size, other.alphabet_size))

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.text == other.text and self.alphabet_size == other.alphabet_size

    def __lt__(self, other: "Word") -> bool:
        return self.text < other.text

    def __hash__(self) -> int:
        return hash((self.text, self.alphabet_size))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r}, alphabet_size={self.alphabet_size})"


@dataclass(frozen=True)
class RunLengthEncoding:
    """Lengths of the maximal blocks of a word, with the first letter recorded."""

    runs: tuple[int, ...]
    first_letter: int


def binary(text: str) -> Word:
    return Word(text, 2)


def ternary(text: str) -> Word:
    return Word(text, 3)


def complement(w: Word) -> Word:
    """Letterwise 0<->1 flip.  Only defined over the binary alphabet."""
    if w.alphabet_size != 2:
        raise ValueError("complement is only defined for binary words")
    return Word(w.text.translate(_COMPLEMENT_TABLE), 2)


def complement_text(text: str) -> str:
    """complement() for raw digit strings, used in inner loops."""
    return text.translate(_COMPLEMENT_TABLE)


def run_length_encoding(w: Word) -> RunLengthEncoding:
    """Maximal-block lengths in order.  Requires a nonempty word."""
    if len(w) == 0:
        raise ValueError("run_length_encoding requires a nonempty word")
    runs = []
    prev = w.text[0]
    count = 0
    for ch in w.text:
        if ch == prev:
            count += 1
        else:
            runs.append(count)
            prev = ch
            count = 1
    runs.append(count)
    return RunLengthEncoding(tuple(runs), ord(w.text[0]) - 48)


def conjugates(w: Word) -> list[Word]:
    """All |w| cyclic shifts, starting with w itself.  Duplicates kept."""
    if len(w) == 0:
        raise ValueError("conjugates requires a nonempty word")
    t = w.text
    return [Word(t[i:] + t[:i], w.alphabet_size) for i in range(len(t))]


def factor_set(w: Word, max_len: int) -> set[Word]:
    """All distinct factors of w of length 1..max_len (the empty factor is excluded)."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    t = w.text
    out: set[str] = set()
    for ln in range(1, min(max_len, len(t)) + 1):
        for i in range(len(t) - ln + 1):
            out.add(t[i : i + ln])
    return {Word(s, w.alphabet_size) for s in out}


def factor_texts(text: str, length: int) -> set[str]:
    """Distinct factors of exactly the given length, as raw strings."""
    return {text[i : i + length] for i in range(len(text) - length + 1)}
