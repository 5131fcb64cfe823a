"""Group elements: exact matrices tagged with their word in the generators."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DomainError
from .exact import QuadHalfInt, QuadMatrix, mat_det, mat_inv, mat_mul, sign_key, to_complex
from .geometry import Float4, mobius_f

# A word is a tuple of (generator number, exponent) pairs; () is the identity.
Word = tuple[tuple[int, int], ...]

_TOKEN = re.compile(r"g(\d+)(?:\^\(?([+-]?\d+)\)?)?")


def merge_words(*words: Word) -> Word:
    out: list[tuple[int, int]] = []
    for w in words:
        for g, e in w:
            if out and out[-1][0] == g:
                e += out.pop()[1]
            if e:
                out.append((g, e))
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def format_word(w: Word) -> str:
    if not w:
        return "Id"
    return " ".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in w)


def parse_word(text: str) -> Word:
    """Parse ``"g1^-1 g3"``, ``"g1^-1*g3"`` or ``"Id"`` into a word."""
    s = text.strip()
    if s in ("", "Id", "id", "1", "I"):
        return ()
    s = s.replace("*", " ").replace("·", " ")
    pos = 0
    pairs = []
    for m in _TOKEN.finditer(s):
        if s[pos:m.start()].strip():
            raise DomainError(f"cannot parse word {text!r}")
        pairs.append((int(m.group(1)), int(m.group(2) or 1)))
        pos = m.end()
    if s[pos:].strip() or not pairs:
        raise DomainError(f"cannot parse word {text!r}")
    return merge_words(tuple(pairs))


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A determinant-one matrix together with the word that produced it."""

    matrix: QuadMatrix
    word: Word = ()
    floats: Float4 = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if mat_det(self.matrix) != QuadHalfInt(2, 0, self.matrix.a):
            raise DomainError("group elements need det = 1")
        object.__setattr__(self, "floats", to_complex(self.matrix))

    @classmethod
    def identity(cls, a: int) -> GroupElement:
        return cls(QuadMatrix.identity(a))

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(mat_mul(self.matrix, other.matrix),
                            merge_words(self.word, other.word))

    def __pow__(self, n: int) -> GroupElement:
        base = self if n >= 0 else self.inverse()
        out = GroupElement.identity(self.matrix.a)
        for _ in range(abs(n)):
            out = out * base
        return out

    def inverse(self) -> GroupElement:
        return GroupElement(mat_inv(self.matrix), invert_word(self.word))

    @property
    def key(self) -> tuple[int, ...]:
        """Hashable class of the element modulo +-Id."""
        return sign_key(self.matrix)

    def same_up_to_sign(self, other: GroupElement) -> bool:
        return self.key == other.key

    def is_pm_identity(self) -> bool:
        ident = QuadMatrix.identity(self.matrix.a)
        return self.matrix == ident or self.matrix == -ident

    def __call__(self, z: complex) -> complex:
        return mobius_f(self.floats, z)

    @property
    def label(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"GroupElement({self.label})"


def evaluate_word(word: Word, generators: dict[int, GroupElement]) -> GroupElement:
    a = next(iter(generators.values())).matrix.a
    out = GroupElement.identity(a)
    for g, e in word:
        out = out * (generators[g] ** e)
    return GroupElement(out.matrix, word)
